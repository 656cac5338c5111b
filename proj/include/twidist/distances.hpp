#pragma once

#include <limits>
#include <optional>
#include <utility>

#include "twidist/core.hpp"
#include "twidist/warping.hpp"

namespace twidist {

struct DtwResult {
    double distance = 0.0;
    std::optional<warping::WarpingPath> path;
};

/// Sakoe-Chiba band: |i - j| <= r on the DP grid. Configured either as a
/// fraction of the longer series (rounded up) or as an absolute radius; the
/// effective radius is widened to | |x| - |y| | so the corner stays reachable.
struct BandConfig {
    std::optional<double> radius_fraction;
    std::optional<int> absolute_radius;

    static BandConfig fraction(double f);
    static BandConfig absolute(int r);
    int effective_radius(std::size_t m, std::size_t n) const;
};

double euclidean(const TimeSeries& x, const TimeSeries& y);

/// Dynamic-program dtw. Costs accumulate as squared differences; the square
/// root is applied once at the end.
double dtw(const TimeSeries& x, const TimeSeries& y);

/// As above, but also recovers an optimal warping path by backtracking with
/// tie priority diagonal > up > left.
DtwResult dtw_with_path(const TimeSeries& x, const TimeSeries& y);

double dtw_banded(const TimeSeries& x, const TimeSeries& y, const BandConfig& band);

/// Early-abandoning dtw: an empty result guarantees dtw(x,y) > threshold,
/// either because a whole DP row rose above threshold^2 or because the
/// finished value did. A present value is the exact distance.
std::optional<double> dtw_early_abandon(const TimeSeries& x, const TimeSeries& y,
                                        double threshold);

/// Banded variant; an empty result guarantees dtw_banded(x,y,band) > threshold.
std::optional<double> dtw_banded_early_abandon(const TimeSeries& x, const TimeSeries& y,
                                               const BandConfig& band, double threshold);

/// Warping-invariant distance: dtw between condensed forms. On irreducible
/// inputs this is a plain dtw call.
double twi(const TimeSeries& x, const TimeSeries& y, ValueEq eq = {});

/// Envelope lower bound for banded dtw on equal-length series.
double lb_keogh(const TimeSeries& query, const TimeSeries& candidate, int radius);

/// Two-pass envelope bound: lb_keogh plus the counter-pass against the
/// projection of the query onto the candidate's envelope. Tighter than
/// lb_keogh and still below the banded dtw of the same radius.
double lb_lemire(const TimeSeries& query, const TimeSeries& candidate, int radius);

double compression_ratio(const TimeSeries& x, ValueEq eq = {});

struct SpeedupFactors {
    double phi1 = 0.0;  // condensation amortized against the dtw grid plus the condensing scans
    double phi2 = 0.0;  // pure grid-size ratio, inputs assumed pre-condensed
};
SpeedupFactors speedup_factors(std::size_t len_x, std::size_t len_y, std::size_t condensed_x,
                               std::size_t condensed_y);

/// Pairwise storage-saving ratio 1 - (|x*|+|y*|) / (2(|x|+|y|)). Note this is
/// 0.5, not 0, for incompressible pairs.
double space_saving_ratio(std::size_t len_x, std::size_t len_y, std::size_t condensed_x,
                          std::size_t condensed_y);

/// Per-series variant 1 - |x*|/|x|.
double space_saving_per_series(std::size_t len, std::size_t condensed_len);

}  // namespace twidist
