#include "twidist/distances.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace twidist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double sq(double v) { return v * v; }

void require_nonempty(const TimeSeries& x, const TimeSeries& y, const char* who) {
    if (x.empty() || y.empty()) throw std::invalid_argument(std::string(who) + ": empty series");
}

// Shared DP over squared costs. `radius` restricts cells to |i-j| <= radius;
// `threshold_sq` abandons once a whole row exceeds it. Returns the squared
// distance, or nullopt when abandoned.
std::optional<double> dtw_core_sq(const TimeSeries& x, const TimeSeries& y,
                                  std::optional<int> radius, double threshold_sq) {
    const std::size_t m = x.size(), n = y.size();
    std::vector<double> prev(n + 1, kInf), cur(n + 1, kInf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
        std::size_t lo = 1, hi = n;
        if (radius) {
            const std::ptrdiff_t r = *radius;
            const std::ptrdiff_t d = static_cast<std::ptrdiff_t>(i);
            lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, d - r));
            hi = static_cast<std::size_t>(std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(n), d + r));
        }
        std::fill(cur.begin(), cur.end(), kInf);
        cur[0] = kInf;
        double row_min = kInf;
        const double xi = x[i - 1];
        for (std::size_t j = lo; j <= hi; ++j) {
            const double best_prev = std::min({prev[j - 1], prev[j], cur[j - 1]});
            if (best_prev == kInf) continue;
            const double c = best_prev + sq(xi - y[j - 1]);
            cur[j] = c;
            row_min = std::min(row_min, c);
        }
        if (row_min > threshold_sq) return std::nullopt;
        std::swap(prev, cur);
    }
    return prev[n];
}

// Windowed min/max envelope over |shift| <= radius, via monotonic deques.
void build_envelope(const TimeSeries& x, int radius, TimeSeries& lower, TimeSeries& upper) {
    const std::size_t n = x.size();
    lower.assign(n, 0.0);
    upper.assign(n, 0.0);
    const std::size_t r = static_cast<std::size_t>(std::max(radius, 0));
    std::deque<std::size_t> maxq, minq;
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t wend = std::min(n - 1, i + r);
        while (next <= wend) {
            while (!maxq.empty() && x[maxq.back()] <= x[next]) maxq.pop_back();
            maxq.push_back(next);
            while (!minq.empty() && x[minq.back()] >= x[next]) minq.pop_back();
            minq.push_back(next);
            ++next;
        }
        while (maxq.front() + r < i) maxq.pop_front();
        while (minq.front() + r < i) minq.pop_front();
        upper[i] = x[maxq.front()];
        lower[i] = x[minq.front()];
    }
}

double lb_keogh_sq(const TimeSeries& q, const TimeSeries& lower, const TimeSeries& upper) {
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] > upper[i])
            s += sq(q[i] - upper[i]);
        else if (q[i] < lower[i])
            s += sq(q[i] - lower[i]);
    }
    return s;
}

}  // namespace

BandConfig BandConfig::fraction(double f) {
    if (f < 0.0 || f > 1.0) throw std::invalid_argument("BandConfig: fraction must lie in [0,1]");
    BandConfig b;
    b.radius_fraction = f;
    return b;
}

BandConfig BandConfig::absolute(int r) {
    if (r < 0) throw std::invalid_argument("BandConfig: absolute radius must be >= 0");
    BandConfig b;
    b.absolute_radius = r;
    return b;
}

int BandConfig::effective_radius(std::size_t m, std::size_t n) const {
    int base = 0;
    if (absolute_radius) {
        base = *absolute_radius;
    } else if (radius_fraction) {
        base = static_cast<int>(std::ceil(*radius_fraction * static_cast<double>(std::max(m, n))));
    } else {
        throw std::invalid_argument("BandConfig: neither fraction nor absolute radius set");
    }
    const int gap = static_cast<int>(m > n ? m - n : n - m);
    return std::max(base, gap);
}

double euclidean(const TimeSeries& x, const TimeSeries& y) {
    if (x.size() != y.size()) throw std::invalid_argument("euclidean: length mismatch");
    require_nonempty(x, y, "euclidean");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += sq(x[i] - y[i]);
    return std::sqrt(s);
}

double dtw(const TimeSeries& x, const TimeSeries& y) {
    require_nonempty(x, y, "dtw");
    return std::sqrt(*dtw_core_sq(x, y, std::nullopt, kInf));
}

DtwResult dtw_with_path(const TimeSeries& x, const TimeSeries& y) {
    require_nonempty(x, y, "dtw");
    const std::size_t m = x.size(), n = y.size();
    std::vector<double> d((m + 1) * (n + 1), kInf);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return d[i * (n + 1) + j]; };
    at(0, 0) = 0.0;
    for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            at(i, j) = std::min({at(i - 1, j - 1), at(i - 1, j), at(i, j - 1)}) + sq(x[i - 1] - y[j - 1]);

    std::vector<warping::GridPoint> rev;
    std::size_t i = m, j = n;
    rev.push_back({static_cast<int>(i), static_cast<int>(j)});
    while (i > 1 || j > 1) {
        if (i == 1) {
            --j;
        } else if (j == 1) {
            --i;
        } else {
            const double diag = at(i - 1, j - 1), up = at(i - 1, j), left = at(i, j - 1);
            if (diag <= up && diag <= left) {
                --i;
                --j;
            } else if (up <= left) {
                --i;
            } else {
                --j;
            }
        }
        rev.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
    std::reverse(rev.begin(), rev.end());
    DtwResult res;
    res.distance = std::sqrt(at(m, n));
    res.path = warping::WarpingPath{{static_cast<int>(m), static_cast<int>(n)}, std::move(rev)};
    return res;
}

double dtw_banded(const TimeSeries& x, const TimeSeries& y, const BandConfig& band) {
    require_nonempty(x, y, "dtw_banded");
    const int r = band.effective_radius(x.size(), y.size());
    return std::sqrt(*dtw_core_sq(x, y, r, kInf));
}

std::optional<double> dtw_early_abandon(const TimeSeries& x, const TimeSeries& y,
                                        double threshold) {
    require_nonempty(x, y, "dtw_early_abandon");
    if (threshold < 0) throw std::invalid_argument("dtw_early_abandon: negative threshold");
    auto s = dtw_core_sq(x, y, std::nullopt, sq(threshold));
    if (!s || *s > sq(threshold)) return std::nullopt;
    return std::sqrt(*s);
}

std::optional<double> dtw_banded_early_abandon(const TimeSeries& x, const TimeSeries& y,
                                               const BandConfig& band, double threshold) {
    require_nonempty(x, y, "dtw_banded_early_abandon");
    if (threshold < 0) throw std::invalid_argument("dtw_banded_early_abandon: negative threshold");
    const int r = band.effective_radius(x.size(), y.size());
    auto s = dtw_core_sq(x, y, r, sq(threshold));
    if (!s || *s > sq(threshold)) return std::nullopt;
    return std::sqrt(*s);
}

double twi(const TimeSeries& x, const TimeSeries& y, ValueEq eq) {
    require_nonempty(x, y, "twi");
    return dtw(condense(x, eq), condense(y, eq));
}

double lb_keogh(const TimeSeries& query, const TimeSeries& candidate, int radius) {
    if (query.size() != candidate.size())
        throw std::invalid_argument("lb_keogh: length mismatch");
    require_nonempty(query, candidate, "lb_keogh");
    TimeSeries lower, upper;
    build_envelope(candidate, radius, lower, upper);
    return std::sqrt(lb_keogh_sq(query, lower, upper));
}

double lb_lemire(const TimeSeries& query, const TimeSeries& candidate, int radius) {
    if (query.size() != candidate.size())
        throw std::invalid_argument("lb_lemire: length mismatch");
    require_nonempty(query, candidate, "lb_lemire");
    TimeSeries lower, upper;
    build_envelope(candidate, radius, lower, upper);
    const double first = lb_keogh_sq(query, lower, upper);

    // project the query onto the candidate's envelope, then bound the
    // candidate against the projection's envelope
    TimeSeries projected(query.size());
    for (std::size_t i = 0; i < query.size(); ++i)
        projected[i] = std::clamp(query[i], lower[i], upper[i]);
    TimeSeries plower, pupper;
    build_envelope(projected, radius, plower, pupper);
    const double second = lb_keogh_sq(candidate, plower, pupper);
    return std::sqrt(first + second);
}

double compression_ratio(const TimeSeries& x, ValueEq eq) {
    if (x.empty()) throw std::invalid_argument("compression_ratio: empty series");
    return static_cast<double>(x.size()) / static_cast<double>(condense(x, eq).size());
}

SpeedupFactors speedup_factors(std::size_t len_x, std::size_t len_y, std::size_t condensed_x,
                               std::size_t condensed_y) {
    if (condensed_x == 0 || condensed_y == 0)
        throw std::invalid_argument("speedup_factors: condensed lengths must be positive");
    const double mn = static_cast<double>(len_x) * static_cast<double>(len_y);
    const double cc = static_cast<double>(condensed_x) * static_cast<double>(condensed_y);
    SpeedupFactors f;
    f.phi1 = mn / (cc + static_cast<double>(condensed_x) + static_cast<double>(condensed_y));
    f.phi2 = mn / cc;
    return f;
}

double space_saving_ratio(std::size_t len_x, std::size_t len_y, std::size_t condensed_x,
                          std::size_t condensed_y) {
    const double denom = 2.0 * (static_cast<double>(len_x) + static_cast<double>(len_y));
    if (denom <= 0.0) throw std::invalid_argument("space_saving_ratio: lengths must be positive");
    return 1.0 - (static_cast<double>(condensed_x) + static_cast<double>(condensed_y)) / denom;
}

double space_saving_per_series(std::size_t len, std::size_t condensed_len) {
    if (len == 0) throw std::invalid_argument("space_saving_per_series: length must be positive");
    return 1.0 - static_cast<double>(condensed_len) / static_cast<double>(len);
}

}  // namespace twidist
