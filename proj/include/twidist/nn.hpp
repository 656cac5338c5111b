#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twidist/core.hpp"
#include "twidist/distances.hpp"

namespace twidist {

enum class DistanceKind { euclidean, dtw, twi, opt_dtw, opt_twi };

enum class AlignmentKind { truncate_or_repeat, linear_resample };

const char* to_string(DistanceKind kind);
std::optional<DistanceKind> parse_distance_kind(const std::string& name);

struct NnConfig {
    DistanceKind distance = DistanceKind::dtw;
    std::optional<BandConfig> band;  // required by the opt variants
    AlignmentKind alignment = AlignmentKind::truncate_or_repeat;
    std::uint64_t seed = 0;
    // opt-twi only: when condensed lengths differ, length-align by linear
    // resampling and use the envelope bounds as a heuristic filter. Off by
    // default; the safe mode applies the bounds only on matching lengths.
    bool lb_on_resampled = false;
    ValueEq eq{};
};

struct Prediction {
    std::string label;
    std::size_t neighbor_index = 0;  // into the training set
    double distance_value = 0.0;
    std::size_t pruned_count = 0;  // candidates dropped by bounds or abandoning
};

/// Label of the training series minimizing the configured distance, ties to
/// the lowest training index. The opt variants align candidates to the query
/// length and run the lb_keogh -> lb_lemire -> early-abandoning banded dtw
/// cascade against the best-so-far; the winner matches an exhaustive scan.
Prediction classify_1nn(const LabeledDataset& train, const TimeSeries& query, const NnConfig& cfg);

/// Per-query classification; independent queries, deterministic under any
/// thread count.
std::vector<Prediction> classify_batch(const LabeledDataset& train,
                                       const std::vector<TimeSeries>& queries, const NnConfig& cfg,
                                       unsigned threads = 0);

struct CvResult {
    std::vector<double> fold_accuracies;
    double mean_accuracy = 0.0;
    bool stratified = true;
};

/// Seed-deterministic stratified k-fold cross-validation with 1-NN. Degrades
/// to unstratified assignment (flagged in the result) when some class has
/// fewer members than folds.
CvResult cross_validate(const LabeledDataset& data, int folds, const NnConfig& cfg,
                        unsigned threads = 0);

double error_rate(const std::vector<std::string>& predicted, const std::vector<std::string>& truth);

}  // namespace twidist
