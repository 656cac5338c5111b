#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "twidist/experiments.hpp"
#include "twidist/parallel.hpp"

namespace twidist {

namespace {

using clock_t_ = std::chrono::steady_clock;

double elapsed_ms(clock_t_::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_t_::now() - t0).count();
}

// Balanced per-class half/half split, seed-deterministic.
void split_half(const LabeledDataset& data, std::uint64_t seed, LabeledDataset& train,
                LabeledDataset& test) {
    std::map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < data.size(); ++i) by_label[data.items[i].label].push_back(i);
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> train_idx, test_idx;
    for (auto& [label, members] : by_label) {
        std::shuffle(members.begin(), members.end(), rng);
        const std::size_t half = (members.size() + 1) / 2;
        for (std::size_t i = 0; i < members.size(); ++i)
            (i < half ? train_idx : test_idx).push_back(members[i]);
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    train = LabeledDataset{data.name, {}};
    test = LabeledDataset{data.name, {}};
    for (std::size_t i : train_idx) train.items.push_back(data.items[i]);
    for (std::size_t i : test_idx) test.items.push_back(data.items[i]);
}

double split_error(const LabeledDataset& train, const LabeledDataset& test, const NnConfig& cfg,
                   unsigned threads) {
    std::vector<TimeSeries> queries;
    std::vector<std::string> truth;
    for (const auto& item : test.items) {
        queries.push_back(item.values);
        truth.push_back(item.label);
    }
    const auto preds = classify_batch(train, queries, cfg, threads);
    std::vector<std::string> labels;
    labels.reserve(preds.size());
    for (const auto& p : preds) labels.push_back(p.label);
    return error_rate(labels, truth);
}

}  // namespace

SynthStudyResult run_synth_study(const std::vector<std::string>& rows, int repeats,
                                 std::uint64_t seed, unsigned threads) {
    if (repeats < 1) throw std::invalid_argument("run_synth_study: repeats must be >= 1");
    const DistanceKind kinds[3] = {DistanceKind::euclidean, DistanceKind::dtw, DistanceKind::twi};

    SynthStudyResult out;
    for (std::size_t row_idx = 0; row_idx < rows.size(); ++row_idx) {
        const std::string& row = rows[row_idx];
        SynthConfig base = synth_row_config(row);
        double err_sum[3] = {0.0, 0.0, 0.0};
        for (int rep = 0; rep < repeats; ++rep) {
            const std::uint64_t rep_seed = mix_seed(seed, row_idx * 1000 + static_cast<std::size_t>(rep));
            SynthConfig cfg = base;
            cfg.seed = rep_seed;
            const LabeledDataset data = generate_synthetic(cfg);
            LabeledDataset train, test;
            split_half(data, mix_seed(rep_seed, 1), train, test);

            for (int k = 0; k < 3; ++k) {
                NnConfig nn;
                nn.distance = kinds[k];
                const auto t0 = clock_t_::now();
                const double err = split_error(train, test, nn, threads);
                err_sum[k] += err;
                out.records.push_back({"synthetic-" + row, to_string(kinds[k]), "error_rate", err, rep,
                                       rep_seed, elapsed_ms(t0)});
            }
        }
        SynthRowSummary s;
        s.row = row;
        s.err_euc = err_sum[0] / repeats;
        s.err_dtw = err_sum[1] / repeats;
        s.err_twi = err_sum[2] / repeats;
        out.summary.push_back(s);
        out.records.push_back({"synthetic-" + row, "euc", "error_rate_mean", s.err_euc, -1, seed, 0.0});
        out.records.push_back({"synthetic-" + row, "dtw", "error_rate_mean", s.err_dtw, -1, seed, 0.0});
        out.records.push_back({"synthetic-" + row, "twi", "error_rate_mean", s.err_twi, -1, seed, 0.0});
    }
    return out;
}

std::vector<ExperimentRecord> run_cv_study(const std::string& dataset_dir,
                                           const std::vector<DistanceKind>& methods, int folds,
                                           std::uint64_t seed, bool merge_splits,
                                           const std::optional<BandConfig>& band,
                                           unsigned threads) {
    const auto datasets = discover_datasets(dataset_dir);
    if (datasets.empty()) throw std::invalid_argument("run_cv_study: no datasets in " + dataset_dir);
    std::vector<ExperimentRecord> records;
    for (std::size_t d = 0; d < datasets.size(); ++d) {
        const LabeledDataset data = load_dataset(datasets[d], merge_splits);
        for (DistanceKind kind : methods) {
            NnConfig cfg;
            cfg.distance = kind;
            cfg.band = band;
            cfg.seed = mix_seed(seed, d);
            const auto t0 = clock_t_::now();
            const CvResult cv = cross_validate(data, folds, cfg, threads);
            const double ms = elapsed_ms(t0);
            for (std::size_t f = 0; f < cv.fold_accuracies.size(); ++f)
                records.push_back({data.name, to_string(kind), "accuracy", cv.fold_accuracies[f],
                                   static_cast<int>(f), cfg.seed, 0.0});
            records.push_back(
                {data.name, to_string(kind), "accuracy_mean", cv.mean_accuracy, -1, cfg.seed, ms});
            records.push_back({data.name, to_string(kind), "stratified", cv.stratified ? 1.0 : 0.0,
                               -1, cfg.seed, 0.0});
        }
    }
    return records;
}

std::vector<ExperimentRecord> run_split_study(const LabeledDataset& train,
                                              const LabeledDataset& test,
                                              const std::vector<DistanceKind>& methods,
                                              const std::optional<BandConfig>& band,
                                              unsigned threads) {
    if (train.empty() || test.empty())
        throw std::invalid_argument("run_split_study: empty train or test set");
    std::vector<ExperimentRecord> records;
    for (DistanceKind kind : methods) {
        NnConfig cfg;
        cfg.distance = kind;
        cfg.band = band;
        const auto t0 = clock_t_::now();
        const double err = split_error(train, test, cfg, threads);
        records.push_back({train.name, to_string(kind), "error_rate", err, -1, 0, elapsed_ms(t0)});
    }
    return records;
}

SegmentedSplit segment_columns(const std::string& csv_path, int days) {
    if (days < 1) throw std::invalid_argument("segment_columns: days must be >= 1");
    std::ifstream in(csv_path);
    if (!in) throw std::invalid_argument("segment_columns: cannot open " + csv_path);

    std::string line;
    std::vector<std::string> labels;
    std::vector<TimeSeries> columns;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) fields.push_back(tok);
        if (first) {
            first = false;
            // header row when any field fails to parse as a number
            bool header = false;
            for (const auto& f : fields) {
                char* end = nullptr;
                std::strtod(f.c_str(), &end);
                if (end == f.c_str() || *end != '\0') header = true;
            }
            columns.resize(fields.size());
            if (header) {
                labels = fields;
                continue;
            }
            for (std::size_t c = 0; c < fields.size(); ++c) labels.push_back("col" + std::to_string(c));
        }
        if (fields.size() != columns.size())
            throw std::invalid_argument("segment_columns: ragged row in " + csv_path);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            char* end = nullptr;
            const double v = std::strtod(fields[c].c_str(), &end);
            if (end == fields[c].c_str()) throw std::invalid_argument("segment_columns: bad number");
            columns[c].push_back(v);
        }
    }

    const std::size_t window = static_cast<std::size_t>(days) * 1440;
    SegmentedSplit split;
    split.train.name = "segments-train";
    split.test.name = "segments-test";
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const TimeSeries& col = columns[c];
        const std::size_t count = col.size() / window;
        for (std::size_t w = 0; w < count; ++w) {
            TimeSeries chunk(col.begin() + static_cast<std::ptrdiff_t>(w * window),
                             col.begin() + static_cast<std::ptrdiff_t>((w + 1) * window));
            LabeledSeries item{std::move(chunk), labels[c]};
            // windows are 1-based in the protocol: odd -> train, even -> test
            if (w % 2 == 0)
                split.train.items.push_back(std::move(item));
            else
                split.test.items.push_back(std::move(item));
        }
    }
    if (split.train.empty())
        throw std::invalid_argument("segment_columns: no full windows in " + csv_path);
    return split;
}

}  // namespace twidist
