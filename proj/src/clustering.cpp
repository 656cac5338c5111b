#include "twidist/clustering.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace twidist {

namespace {

TimeSeries fit_length(const TimeSeries& x, std::size_t length) {
    if (x.size() == length) return x;
    if (x.size() >= 2 && length >= 2) return resample_linear(x, length);
    return align_truncate_or_repeat(x, length);
}

std::size_t median_length(const std::vector<TimeSeries>& members) {
    std::vector<std::size_t> lens;
    lens.reserve(members.size());
    for (const auto& m : members) lens.push_back(m.size());
    std::sort(lens.begin(), lens.end());
    return lens[(lens.size() - 1) / 2];  // lower median
}

}  // namespace

double frechet(const std::vector<TimeSeries>& sample, const TimeSeries& z) {
    if (sample.empty()) throw std::invalid_argument("frechet: empty sample");
    double f = 0.0;
    for (const TimeSeries& x : sample) {
        const double d = dtw(x, z);
        f += d * d;
    }
    return f;
}

TimeSeries dba_refine(const std::vector<TimeSeries>& sample, TimeSeries mean, int max_iter) {
    if (sample.empty()) throw std::invalid_argument("dba_refine: empty sample");
    if (mean.empty()) throw std::invalid_argument("dba_refine: empty mean");
    double f = frechet(sample, mean);
    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> sum(mean.size(), 0.0);
        std::vector<std::size_t> count(mean.size(), 0);
        for (const TimeSeries& x : sample) {
            const auto res = dtw_with_path(mean, x);
            for (const auto& p : res.path->points) {
                sum[static_cast<std::size_t>(p.i - 1)] += x[static_cast<std::size_t>(p.j - 1)];
                ++count[static_cast<std::size_t>(p.i - 1)];
            }
        }
        TimeSeries next(mean.size());
        for (std::size_t i = 0; i < mean.size(); ++i)
            next[i] = sum[i] / static_cast<double>(count[i]);  // paths cover every coordinate
        const double fn = frechet(sample, next);
        if (fn > f) break;  // guard against round-off; the value must not rise
        const double gain = f - fn;
        mean = std::move(next);
        f = fn;
        if (gain < 1e-9) break;
    }
    return mean;
}

TimeSeries dba_mean(const std::vector<TimeSeries>& sample, std::size_t length, int max_iter,
                    std::uint64_t seed) {
    if (sample.empty()) throw std::invalid_argument("dba_mean: empty sample");
    if (length < 1) throw std::invalid_argument("dba_mean: length must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, sample.size() - 1);
    TimeSeries init = fit_length(sample[pick(rng)], length);
    return dba_refine(sample, std::move(init), max_iter);
}

Clustering kmeans(const std::vector<TimeSeries>& data, const KmeansConfig& cfg) {
    if (cfg.k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
    if (static_cast<std::size_t>(cfg.k) > data.size())
        throw std::invalid_argument("kmeans: k exceeds dataset size");

    const bool twi_mode = cfg.distance == ClusterDistance::twi;
    std::vector<TimeSeries> pts;
    pts.reserve(data.size());
    for (const TimeSeries& x : data) pts.push_back(twi_mode ? condense(x, cfg.eq) : x);

    const std::size_t k = static_cast<std::size_t>(cfg.k);
    std::mt19937_64 rng(cfg.seed);
    std::vector<std::size_t> order(data.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);

    Clustering out;
    out.k = cfg.k;
    out.centroids.assign(k, {});
    for (std::size_t c = 0; c < k; ++c) out.centroids[c] = pts[order[c]];
    out.assignments.assign(data.size(), 0);

    std::vector<double> dist_to_centroid(data.size(), 0.0);
    auto assign_all = [&]() {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t arg = 0;
            for (std::size_t c = 0; c < k; ++c) {
                const double d = dtw(pts[i], out.centroids[c]);
                if (d < best) {
                    best = d;
                    arg = c;
                }
            }
            out.assignments[i] = arg;
            dist_to_centroid[i] = best;
        }
        // reseed empty clusters with the worst-fitting point
        for (std::size_t c = 0; c < k; ++c) {
            if (std::count(out.assignments.begin(), out.assignments.end(), c) > 0) continue;
            std::size_t worst = 0;
            double worst_d = -1.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const bool movable =
                    std::count(out.assignments.begin(), out.assignments.end(), out.assignments[i]) > 1;
                if (movable && dist_to_centroid[i] > worst_d) {
                    worst_d = dist_to_centroid[i];
                    worst = i;
                }
            }
            out.assignments[worst] = c;
            out.centroids[c] = pts[worst];
            dist_to_centroid[worst] = 0.0;
        }
    };

    std::vector<std::size_t> prev;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        out.iterations = it;
        assign_all();
        if (out.assignments == prev) break;
        prev = out.assignments;

        for (std::size_t c = 0; c < k; ++c) {
            std::vector<TimeSeries> members;
            for (std::size_t i = 0; i < pts.size(); ++i)
                if (out.assignments[i] == c) members.push_back(pts[i]);
            if (members.empty()) continue;
            const std::size_t len = cfg.mean_length ? *cfg.mean_length : median_length(members);
            TimeSeries candidate =
                dba_refine(members, fit_length(out.centroids[c], len), cfg.dba_iter);
            if (twi_mode) candidate = condense(candidate, cfg.eq);
            if (frechet(members, candidate) <= frechet(members, out.centroids[c]))
                out.centroids[c] = std::move(candidate);
        }
    }

    out.objective = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = dtw(pts[i], out.centroids[out.assignments[i]]);
        out.objective += d * d;
    }
    return out;
}

double cluster_cohesion(const Clustering& clustering, const std::vector<TimeSeries>& data) {
    if (clustering.assignments.size() != data.size())
        throw std::invalid_argument("cluster_cohesion: assignment/data size mismatch");
    double total = 0.0;
    for (std::size_t c = 0; c < clustering.centroids.size(); ++c) {
        std::vector<TimeSeries> members;
        for (std::size_t i = 0; i < data.size(); ++i)
            if (clustering.assignments[i] == c) members.push_back(data[i]);
        if (!members.empty()) total += frechet(members, clustering.centroids[c]);
    }
    return total;
}

double cluster_separation(const TimeSeries& a, const TimeSeries& b) {
    const double d = dtw(a, b);
    return d * d;
}

std::vector<SeparationRow> separation_growth_demo(int r_max) {
    if (r_max < 1) throw std::invalid_argument("separation_growth_demo: r_max must be >= 1");
    const std::vector<TimeSeries> cluster1 = {{-1, 0, 0}, {-1, 0, 2}};
    const std::vector<TimeSeries> cluster2 = {{0, 2, 3}, {1, 2, 3}};
    const TimeSeries mean1 = {-1, 0, 1};
    std::vector<SeparationRow> rows;
    for (int r = 1; r <= r_max; ++r) {
        TimeSeries mean2 = {0.5, 2};
        mean2.insert(mean2.end(), static_cast<std::size_t>(r), 3.0);
        SeparationRow row;
        row.r = r;
        row.cohesion = frechet(cluster1, mean1) + frechet(cluster2, mean2);
        row.separation_dtw = cluster_separation(mean1, mean2);
        row.separation_twi = [&] {
            const double d = twi(mean1, mean2);
            return d * d;
        }();
        rows.push_back(row);
    }
    return rows;
}

}  // namespace twidist
