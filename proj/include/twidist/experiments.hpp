#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twidist/core.hpp"
#include "twidist/distances.hpp"
#include "twidist/nn.hpp"

namespace twidist {

/// splitmix-style mixing used to derive per-task seeds from a master seed,
/// so parallel schedules cannot change any result.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t task);

// ---------------------------------------------------------------------------
// ingestion

/// One series per line, first field the class label, delimiter auto-detected
/// among tab / comma / whitespace. Trailing NaN padding is dropped; interior
/// NaNs are an error.
LabeledDataset load_ucr(const std::string& path);

struct DatasetFiles {
    std::string name;
    std::string train_path;
    std::optional<std::string> test_path;
};

/// Scans a directory (one level of subdirectories included) for UCR-style
/// *_TRAIN* / *_TEST* pairs; bare data files count as unsplit datasets.
std::vector<DatasetFiles> discover_datasets(const std::string& dir);

/// Loads the train file, appending the test file unless merge is false.
LabeledDataset load_dataset(const DatasetFiles& files, bool merge = true);

/// Tab-separated writer for the same one-series-per-line layout.
void write_ucr(const std::string& path, const LabeledDataset& data);

// ---------------------------------------------------------------------------
// synthetic cylinder data

struct SynthConfig {
    int n_series = 200;
    int series_len = 100;
    int cylinder_len = 10;
    double b_plus = 0.0;
    double b_minus = -0.05;
    double theta_b = 0.0;
    double c_plus = 1.0;
    double c_minus = 1.0;
    double theta_c = 1.0;
    bool z_transform = false;
    // The base is a constant segment: its noise is one draw per series by
    // default. Cylinder noise is always drawn per element.
    bool base_noise_per_element = false;
    std::uint64_t seed = 0;
};

/// Two balanced classes of flat series with one noisy cylinder of fixed
/// length at a uniformly random position.
LabeledDataset generate_synthetic(const SynthConfig& cfg);

/// Parameter presets E1..E5 for the classifier-limitation study.
SynthConfig synth_row_config(const std::string& row_id);

// ---------------------------------------------------------------------------
// statistics

struct ReducibilityStats {
    double reducible_fraction = 0.0;   // share of series shorter after condensing
    double mean_shortening = 0.0;      // mean of 1 - |x*|/|x| over reducible series
    std::vector<double> compression_ratios;  // per-series |x|/|x*|
};

ReducibilityStats reducibility_stats(const LabeledDataset& data, ValueEq eq = {});

struct Correlations {
    double pearson = 0.0;
    double spearman = 0.0;
    double kendall = 0.0;  // tau-b
};

Correlations correlations(const std::vector<double>& xs, const std::vector<double>& ys);

struct BayesResult {
    double p_left = 0.0;   // first classifier practically better
    double p_rope = 0.0;   // practically equivalent
    double p_right = 0.0;  // second classifier practically better
};

/// Bayesian sign test with a region of practical equivalence: counts of
/// diffs below -rope / inside / above +rope feed a Dirichlet posterior with
/// `prior_strength` pseudo-counts on the rope; the three probabilities are
/// Monte Carlo estimates of each component being the largest.
BayesResult bayes_sign_test(const std::vector<double>& diffs, double rope, double prior_strength,
                            int mc_samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// records

struct ExperimentRecord {
    std::string dataset;
    std::string method;
    std::string metric;
    double value = 0.0;
    int fold = -1;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
};

void write_records_csv(std::ostream& os, const std::vector<ExperimentRecord>& records);

// ---------------------------------------------------------------------------
// timing

/// Samples `pairs` random index pairs, times every method `reps` times per
/// pair on a monotonic clock and emits mean/median times, speed-ups over
/// dtw, and the pairwise space-saving ratio. Euclidean rows appear only for
/// equal-length pairs.
std::vector<ExperimentRecord> timing_bench(const LabeledDataset& data,
                                           const std::vector<DistanceKind>& methods, int pairs,
                                           int reps, std::uint64_t seed);

// ---------------------------------------------------------------------------
// studies

struct SynthRowSummary {
    std::string row;
    double err_euc = 0.0;
    double err_dtw = 0.0;
    double err_twi = 0.0;
};

struct SynthStudyResult {
    std::vector<SynthRowSummary> summary;
    std::vector<ExperimentRecord> records;
};

/// Per row: `repeats` rounds of generate, balanced 50/50 split, 1-NN with
/// euc/dtw/twi, averaged error rates.
SynthStudyResult run_synth_study(const std::vector<std::string>& rows, int repeats,
                                 std::uint64_t seed, unsigned threads = 0);

std::vector<ExperimentRecord> run_cv_study(const std::string& dataset_dir,
                                           const std::vector<DistanceKind>& methods, int folds,
                                           std::uint64_t seed, bool merge_splits,
                                           const std::optional<BandConfig>& band,
                                           unsigned threads = 0);

std::vector<ExperimentRecord> run_split_study(const LabeledDataset& train,
                                              const LabeledDataset& test,
                                              const std::vector<DistanceKind>& methods,
                                              const std::optional<BandConfig>& band,
                                              unsigned threads = 0);

// ---------------------------------------------------------------------------
// long-recording segmentation

struct SegmentedSplit {
    LabeledDataset train;
    LabeledDataset test;
};

/// Splits every column of a CSV of per-minute readings into day windows of
/// 1440*days samples each, labeled by column; odd windows (first, third, ...)
/// go to the training set, even windows to the test set.
SegmentedSplit segment_columns(const std::string& csv_path, int days);

}  // namespace twidist
