#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "twidist/clustering.hpp"
#include "twidist/distances.hpp"
#include "twidist/experiments.hpp"
#include "twidist/nn.hpp"

namespace {

twidist::TimeSeries load_plain_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    twidist::TimeSeries raw;
    std::string tok;
    while (in >> tok) {
        std::replace(tok.begin(), tok.end(), ',', ' ');
        std::istringstream ss(tok);
        std::string part;
        while (ss >> part) {
            char* end = nullptr;
            const double v = std::strtod(part.c_str(), &end);
            if (end == part.c_str()) throw std::invalid_argument(path + ": bad number '" + part + "'");
            raw.push_back(v);
        }
    }
    return twidist::finalize_ingested(std::move(raw));
}

std::vector<double> load_numbers(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    if (out.empty()) throw std::invalid_argument(path + ": no numbers");
    return out;
}

twidist::DistanceKind parse_method_or_throw(const std::string& name) {
    const auto kind = twidist::parse_distance_kind(name);
    if (!kind) throw std::invalid_argument("unknown method '" + name + "'");
    return *kind;
}

int cmd_dist(const std::string& method, const std::string& file_a, const std::string& file_b,
             double band_fraction, bool want_path) {
    const twidist::TimeSeries a = load_plain_series(file_a);
    const twidist::TimeSeries b = load_plain_series(file_b);
    const twidist::DistanceKind kind = parse_method_or_throw(method);
    const bool banded = band_fraction >= 0.0;
    if (banded && want_path) throw std::invalid_argument("--path cannot be combined with --band");

    double value = 0.0;
    std::optional<twidist::warping::WarpingPath> path;
    switch (kind) {
        case twidist::DistanceKind::euclidean:
            value = twidist::euclidean(a, b);
            break;
        case twidist::DistanceKind::dtw: {
            if (banded) {
                value = twidist::dtw_banded(a, b, twidist::BandConfig::fraction(band_fraction));
            } else if (want_path) {
                auto res = twidist::dtw_with_path(a, b);
                value = res.distance;
                path = std::move(res.path);
            } else {
                value = twidist::dtw(a, b);
            }
            break;
        }
        case twidist::DistanceKind::twi: {
            const twidist::TimeSeries ca = twidist::condense(a), cb = twidist::condense(b);
            if (banded) {
                value = twidist::dtw_banded(ca, cb, twidist::BandConfig::fraction(band_fraction));
            } else if (want_path) {
                auto res = twidist::dtw_with_path(ca, cb);
                value = res.distance;
                path = std::move(res.path);
            } else {
                value = twidist::dtw(ca, cb);
            }
            break;
        }
        default:
            throw std::invalid_argument("dist supports euc, dtw, twi");
    }
    std::printf("%.12g\n", value);
    if (path) {
        for (const auto& p : path->points) std::printf("(%d,%d)\n", p.i, p.j);
    }
    return 0;
}

int cmd_stats(const std::string& dir) {
    const auto datasets = twidist::discover_datasets(dir);
    if (datasets.empty()) throw std::invalid_argument("no datasets found in " + dir);
    std::vector<twidist::ExperimentRecord> records;
    std::vector<double> lengths, p_reds;
    std::size_t total = 0, reducible_total = 0;
    double shortening_sum = 0.0;
    std::size_t shortening_count = 0;
    for (const auto& files : datasets) {
        const auto data = twidist::load_dataset(files, true);
        const auto st = twidist::reducibility_stats(data);
        double mean_len = 0.0;
        for (const auto& item : data.items) mean_len += static_cast<double>(item.values.size());
        mean_len /= static_cast<double>(data.size());
        records.push_back({data.name, "condense", "p_red", st.reducible_fraction, -1, 0, 0.0});
        records.push_back({data.name, "condense", "mean_shortening", st.mean_shortening, -1, 0, 0.0});
        records.push_back({data.name, "condense", "mean_length", mean_len, -1, 0, 0.0});
        lengths.push_back(mean_len);
        p_reds.push_back(st.reducible_fraction);
        total += data.size();
        for (std::size_t i = 0; i < data.size(); ++i) {
            const auto& x = data.items[i].values;
            const std::size_t c = twidist::condense(x).size();
            if (c < x.size()) {
                ++reducible_total;
                shortening_sum += 1.0 - static_cast<double>(c) / static_cast<double>(x.size());
                ++shortening_count;
            }
        }
    }
    records.push_back({"ALL", "condense", "p_red_overall",
                       static_cast<double>(reducible_total) / static_cast<double>(total), -1, 0, 0.0});
    records.push_back({"ALL", "condense", "mean_shortening_overall",
                       shortening_count ? shortening_sum / static_cast<double>(shortening_count) : 0.0,
                       -1, 0, 0.0});
    if (lengths.size() >= 2) {
        const auto corr = twidist::correlations(lengths, p_reds);
        records.push_back({"ALL", "length_vs_p_red", "pearson", corr.pearson, -1, 0, 0.0});
        records.push_back({"ALL", "length_vs_p_red", "spearman", corr.spearman, -1, 0, 0.0});
        records.push_back({"ALL", "length_vs_p_red", "kendall", corr.kendall, -1, 0, 0.0});
    }
    twidist::write_records_csv(std::cout, records);
    return 0;
}

int cmd_bench(const std::string& dir, int pairs, int reps, std::uint64_t seed) {
    const auto datasets = twidist::discover_datasets(dir);
    if (datasets.empty()) throw std::invalid_argument("no datasets found in " + dir);
    const std::vector<twidist::DistanceKind> methods = {
        twidist::DistanceKind::euclidean, twidist::DistanceKind::dtw, twidist::DistanceKind::twi};
    std::vector<twidist::ExperimentRecord> records;
    for (std::size_t d = 0; d < datasets.size(); ++d) {
        const auto data = twidist::load_dataset(datasets[d], true);
        auto r = twidist::timing_bench(data, methods, pairs, reps, twidist::mix_seed(seed, d));
        records.insert(records.end(), r.begin(), r.end());
    }
    twidist::write_records_csv(std::cout, records);
    return 0;
}

int cmd_knn(const std::string& dir, const std::string& method, int folds, std::uint64_t seed,
            double band_fraction, bool opt, bool no_merge, unsigned threads) {
    twidist::DistanceKind kind = parse_method_or_throw(method);
    if (opt) {
        if (kind == twidist::DistanceKind::dtw) kind = twidist::DistanceKind::opt_dtw;
        else if (kind == twidist::DistanceKind::twi) kind = twidist::DistanceKind::opt_twi;
    }
    std::optional<twidist::BandConfig> band;
    const bool is_opt =
        kind == twidist::DistanceKind::opt_dtw || kind == twidist::DistanceKind::opt_twi;
    if (band_fraction >= 0.0)
        band = twidist::BandConfig::fraction(band_fraction);
    else if (is_opt)
        band = twidist::BandConfig::fraction(0.1);
    const auto records =
        twidist::run_cv_study(dir, {kind}, folds, seed, !no_merge, band, threads);
    for (const auto& r : records)
        if (r.metric == "stratified" && r.value == 0.0)
            std::cerr << "warning: " << r.dataset
                      << ": some class has fewer members than folds; folds are unstratified\n";
    twidist::write_records_csv(std::cout, records);
    return 0;
}

int cmd_synth(std::vector<std::string> rows, int repeats, std::uint64_t seed, unsigned threads) {
    if (rows.empty()) rows = {"E1", "E2", "E3", "E4", "E5"};
    const auto result = twidist::run_synth_study(rows, repeats, seed, threads);
    twidist::write_records_csv(std::cout, result.records);
    return 0;
}

int cmd_kmeans_demo(int rmax) {
    const auto rows = twidist::separation_growth_demo(rmax);
    std::printf("r,cohesion,separation_dtw,separation_twi\n");
    for (const auto& row : rows)
        std::printf("%d,%.12g,%.12g,%.12g\n", row.r, row.cohesion, row.separation_dtw,
                    row.separation_twi);
    return 0;
}

int cmd_bayes(const std::string& diffs_file, double rope, double prior, int samples,
              std::uint64_t seed) {
    const auto diffs = load_numbers(diffs_file);
    const auto res = twidist::bayes_sign_test(diffs, rope, prior, samples, seed);
    std::printf("p_left,p_rope,p_right\n%.6f,%.6f,%.6f\n", res.p_left, res.p_rope, res.p_right);
    return 0;
}

int cmd_segment(const std::string& input, int days, const std::string& out_dir) {
    const auto split = twidist::segment_columns(input, days);
    std::filesystem::create_directories(out_dir);
    const std::string train = out_dir + "/segments_TRAIN.tsv";
    const std::string test = out_dir + "/segments_TEST.tsv";
    twidist::write_ucr(train, split.train);
    twidist::write_ucr(test, split.test);
    std::printf("train=%s rows=%zu\ntest=%s rows=%zu\n", train.c_str(), split.train.size(),
                test.c_str(), split.test.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-series distances: dtw, the warping-invariant twi, and experiment drivers"};
    app.require_subcommand(1);

    // dist
    std::string dist_method = "dtw", file_a, file_b;
    double dist_band = -1.0;
    bool dist_path = false;
    auto* dist = app.add_subcommand("dist", "distance between two series files");
    dist->add_option("--method", dist_method, "euc | dtw | twi")->capture_default_str();
    dist->add_option("--a", file_a, "first series file")->required();
    dist->add_option("--b", file_b, "second series file")->required();
    dist->add_option("--band", dist_band, "Sakoe-Chiba radius as fraction of max length");
    dist->add_flag("--path", dist_path, "also print an optimal warping path");

    // stats
    std::string stats_dir;
    auto* stats = app.add_subcommand("stats", "per-dataset condensation statistics and correlations");
    stats->add_option("--data", stats_dir, "dataset directory")->required();

    // bench
    std::string bench_dir;
    int bench_pairs = 100, bench_reps = 100;
    std::uint64_t bench_seed = 0;
    auto* bench = app.add_subcommand("bench", "distance timing benchmark");
    bench->add_option("--data", bench_dir, "dataset directory")->required();
    bench->add_option("--pairs", bench_pairs, "random pairs per dataset")->capture_default_str();
    bench->add_option("--reps", bench_reps, "timed repetitions per pair")->capture_default_str();
    bench->add_option("--seed", bench_seed, "rng seed")->capture_default_str();

    // knn
    std::string knn_dir, knn_method = "dtw";
    int knn_folds = 10;
    std::uint64_t knn_seed = 0;
    double knn_band = -1.0;
    bool knn_opt = false, knn_no_merge = false;
    unsigned knn_threads = 0;
    auto* knn = app.add_subcommand("knn", "k-fold cross-validated 1-NN accuracy");
    knn->add_option("--data", knn_dir, "dataset directory")->required();
    knn->add_option("--method", knn_method, "euc | dtw | twi | opt-dtw | opt-twi")
        ->capture_default_str();
    knn->add_option("--folds", knn_folds, "folds")->capture_default_str();
    knn->add_option("--seed", knn_seed, "rng seed")->capture_default_str();
    knn->add_option("--band", knn_band, "Sakoe-Chiba radius fraction (default 0.1 for opt)");
    knn->add_flag("--opt", knn_opt, "use the pruning cascade (band + bounds + abandoning)");
    knn->add_flag("--no-merge", knn_no_merge, "cross-validate the TRAIN file only");
    knn->add_option("--threads", knn_threads, "0 = hardware");

    // synth
    std::vector<std::string> synth_rows;
    int synth_repeats = 50;
    std::uint64_t synth_seed = 0;
    unsigned synth_threads = 0;
    auto* synth = app.add_subcommand("synth", "synthetic cylinder study (rows E1..E5)");
    synth->add_option("--row", synth_rows, "row id E1..E5, repeatable; default all");
    synth->add_option("--repeats", synth_repeats, "repeats per row")->capture_default_str();
    synth->add_option("--seed", synth_seed, "rng seed")->capture_default_str();
    synth->add_option("--threads", synth_threads, "0 = hardware");

    // kmeans-demo
    int demo_rmax = 10;
    auto* demo = app.add_subcommand("kmeans-demo", "cluster separation growth under replication");
    demo->add_option("--rmax", demo_rmax, "largest replication count")->capture_default_str();

    // bayes
    std::string bayes_file;
    double bayes_rope = 0.005, bayes_prior = 1.0;
    int bayes_samples = 100000;
    std::uint64_t bayes_seed = 0;
    auto* bayes = app.add_subcommand("bayes", "sign test with a region of practical equivalence");
    bayes->add_option("--diffs", bayes_file, "file of accuracy differences")->required();
    bayes->add_option("--rope", bayes_rope, "practical-equivalence half-width")->capture_default_str();
    bayes->add_option("--prior", bayes_prior, "pseudo-count on the rope")->capture_default_str();
    bayes->add_option("--samples", bayes_samples, "Monte Carlo samples")->capture_default_str();
    bayes->add_option("--seed", bayes_seed, "rng seed")->capture_default_str();

    // segment
    std::string seg_input, seg_out = ".";
    int seg_days = 1;
    auto* seg = app.add_subcommand("segment", "split long per-column recordings into day windows");
    seg->add_option("--input", seg_input, "CSV with one column per source")->required();
    seg->add_option("--days", seg_days, "days per window (1440 samples per day)")
        ->capture_default_str();
    seg->add_option("--out", seg_out, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (dist->parsed()) return cmd_dist(dist_method, file_a, file_b, dist_band, dist_path);
        if (stats->parsed()) return cmd_stats(stats_dir);
        if (bench->parsed()) return cmd_bench(bench_dir, bench_pairs, bench_reps, bench_seed);
        if (knn->parsed())
            return cmd_knn(knn_dir, knn_method, knn_folds, knn_seed, knn_band, knn_opt,
                           knn_no_merge, knn_threads);
        if (synth->parsed()) return cmd_synth(synth_rows, synth_repeats, synth_seed, synth_threads);
        if (demo->parsed()) return cmd_kmeans_demo(demo_rmax);
        if (bayes->parsed())
            return cmd_bayes(bayes_file, bayes_rope, bayes_prior, bayes_samples, bayes_seed);
        if (seg->parsed()) return cmd_segment(seg_input, seg_days, seg_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
