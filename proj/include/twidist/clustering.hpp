#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "twidist/core.hpp"
#include "twidist/distances.hpp"

namespace twidist {

/// Sum of squared dtw distances from z to every sample member. Minimizers
/// over all candidate series are the sample means.
double frechet(const std::vector<TimeSeries>& sample, const TimeSeries& z);

/// One majorize-minimize sweep sequence starting from `mean`: align every
/// series to the mean along an optimal warping path, replace each mean
/// coordinate by the average of the values aligned to it. Stops when the
/// Frechet value decreases by less than 1e-9 or after max_iter sweeps; the
/// value never increases.
TimeSeries dba_refine(const std::vector<TimeSeries>& sample, TimeSeries mean, int max_iter);

/// dba_refine seeded from a random sample member brought to `length`.
TimeSeries dba_mean(const std::vector<TimeSeries>& sample, std::size_t length, int max_iter,
                    std::uint64_t seed);

enum class ClusterDistance { dtw, twi };

struct KmeansConfig {
    int k = 2;
    ClusterDistance distance = ClusterDistance::dtw;
    std::optional<std::size_t> mean_length;  // unset: median member length per cluster
    int max_iter = 50;
    int dba_iter = 30;
    std::uint64_t seed = 0;
    ValueEq eq{};
};

struct Clustering {
    std::vector<std::size_t> assignments;
    std::vector<TimeSeries> centroids;
    int k = 0;
    double objective = 0.0;
    int iterations = 0;
};

/// Lloyd iterations with dba means. Assignment ties go to the lowest
/// centroid index; empty clusters are reseeded with the point farthest from
/// its centroid; a centroid update is kept only if it does not increase the
/// cluster's Frechet value, so the objective is non-increasing. Under twi,
/// inputs are compared in condensed form and centroids are condensed after
/// every update.
Clustering kmeans(const std::vector<TimeSeries>& data, const KmeansConfig& cfg);

/// Sum over clusters of the Frechet value of its centroid (dtw-based).
double cluster_cohesion(const Clustering& clustering, const std::vector<TimeSeries>& data);

/// Squared dtw distance between two centroids.
double cluster_separation(const TimeSeries& a, const TimeSeries& b);

struct SeparationRow {
    int r = 0;
    double cohesion = 0.0;
    double separation_dtw = 0.0;
    double separation_twi = 0.0;
};

/// Two fixed clusters whose second mean admits equivalent representatives
/// (0.5, 2, 3...3) with r trailing replications. Emits, per r, the dtw/twi
/// separation and the (constant) cohesion, showing that dtw separation can
/// be inflated by replication while twi separation stays put.
std::vector<SeparationRow> separation_growth_demo(int r_max);

}  // namespace twidist
