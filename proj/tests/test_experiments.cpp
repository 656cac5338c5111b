#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "twidist/experiments.hpp"

using namespace twidist;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("twidist_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("ucr loader parses labels and values") {
    TempDir tmp;
    const auto file = tmp.path / "toy.tsv";
    write_file(file, "2\t0.1\t0.1\t0.3\n1\t-1\t0\t1\n");
    const auto data = load_ucr(file.string());
    REQUIRE(data.size() == 2);
    CHECK(data.items[0].label == "2");
    CHECK(data.items[0].values == TimeSeries{0.1, 0.1, 0.3});
    CHECK(data.items[1].label == "1");
    CHECK(data.name == "toy");
}

TEST_CASE("ucr loader auto-detects comma and space delimiters") {
    TempDir tmp;
    write_file(tmp.path / "c.csv", "a,1,2\nb,3,4\n");
    write_file(tmp.path / "s.txt", "a 1 2\nb 3 4\n");
    CHECK(load_ucr((tmp.path / "c.csv").string()).items[1].values == TimeSeries{3, 4});
    CHECK(load_ucr((tmp.path / "s.txt").string()).items[0].label == "a");
}

TEST_CASE("ucr loader drops trailing NaN padding and rejects interior NaN") {
    TempDir tmp;
    write_file(tmp.path / "pad.tsv", "1\t0.5\t0.6\tNaN\tNaN\n");
    CHECK(load_ucr((tmp.path / "pad.tsv").string()).items[0].values == TimeSeries{0.5, 0.6});

    write_file(tmp.path / "bad.csv", "1,0.5,NaN,0.7\n");
    CHECK_THROWS_AS(load_ucr((tmp.path / "bad.csv").string()), std::invalid_argument);

    write_file(tmp.path / "empty.tsv", "");
    CHECK_THROWS_AS(load_ucr((tmp.path / "empty.tsv").string()), std::invalid_argument);
    CHECK_THROWS_AS(load_ucr((tmp.path / "missing.tsv").string()), std::invalid_argument);
}

TEST_CASE("dataset discovery pairs TRAIN and TEST files") {
    TempDir tmp;
    fs::create_directories(tmp.path / "Coffee");
    write_file(tmp.path / "Coffee" / "Coffee_TRAIN.tsv", "a\t1\t2\n");
    write_file(tmp.path / "Coffee" / "Coffee_TEST.tsv", "b\t3\t4\n");
    write_file(tmp.path / "Beef_TRAIN.tsv", "a\t1\t2\n");
    const auto found = discover_datasets(tmp.path.string());
    REQUIRE(found.size() == 2);
    CHECK(found[0].name == "Beef");
    CHECK_FALSE(found[0].test_path.has_value());
    CHECK(found[1].name == "Coffee");
    REQUIRE(found[1].test_path.has_value());

    const auto merged = load_dataset(found[1], true);
    CHECK(merged.size() == 2);
    const auto unmerged = load_dataset(found[1], false);
    CHECK(unmerged.size() == 1);
}

TEST_CASE("write and reload round trip") {
    std::mt19937_64 rng(61);
    TempDir tmp;
    LabeledDataset data{"rt", {}};
    for (int i = 0; i < 10; ++i)
        data.items.push_back({oracle::random_series(rng, 1, 12), i % 2 ? "x" : "y"});
    const auto file = tmp.path / "rt.tsv";
    write_ucr(file.string(), data);
    const auto back = load_ucr(file.string());
    REQUIRE(back.size() == data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(back.items[i].label == data.items[i].label);
        CHECK(back.items[i].values == data.items[i].values);
    }
}

TEST_CASE("synthetic generator shape and determinism") {
    SynthConfig cfg;
    cfg.seed = 99;
    const auto a = generate_synthetic(cfg);
    const auto b = generate_synthetic(cfg);
    REQUIRE(a.size() == 200);
    std::size_t plus = 0;
    for (const auto& item : a.items) {
        CHECK(item.values.size() == 100);
        if (item.label == "+1") ++plus;
    }
    CHECK(plus == 100);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.items[i].values == b.items[i].values);
    cfg.seed = 100;
    const auto c = generate_synthetic(cfg);
    CHECK(a.items[0].values != c.items[0].values);
}

TEST_CASE("synthetic series have one cylinder of the configured length") {
    SynthConfig cfg;
    cfg.theta_b = 0.0;
    cfg.theta_c = 0.0;
    cfg.b_minus = 0.0;
    cfg.c_minus = 1.0;
    cfg.seed = 5;
    const auto data = generate_synthetic(cfg);
    for (const auto& item : data.items) {
        std::size_t high = 0;
        std::size_t first = item.values.size(), last = 0;
        for (std::size_t i = 0; i < item.values.size(); ++i) {
            if (item.values[i] == 1.0) {
                ++high;
                first = std::min(first, i);
                last = i;
            }
        }
        CHECK(high == 10);
        CHECK(last - first + 1 == 10);  // contiguous
    }
}

TEST_CASE("flat bases condense the synthetic series down to the cylinder") {
    SynthConfig cfg;  // theta_b = 0, noisy cylinder
    cfg.seed = 17;
    const auto data = generate_synthetic(cfg);
    for (const auto& item : data.items) CHECK(condense(item.values).size() <= 12);

    SynthConfig quiet = cfg;
    quiet.theta_c = 0.0;
    for (const auto& item : generate_synthetic(quiet).items)
        CHECK(condense(item.values).size() <= 3);
}

TEST_CASE("reducibility statistics") {
    LabeledDataset irr{"irr", {{{0, 1, 0}, "a"}, {{2, 3}, "a"}}};
    const auto s1 = reducibility_stats(irr);
    CHECK(s1.reducible_fraction == 0.0);
    CHECK(s1.mean_shortening == 0.0);

    LabeledDataset flat{"flat", {{TimeSeries(8, 4.0), "a"}, {TimeSeries(8, 9.0), "b"}}};
    const auto s2 = reducibility_stats(flat);
    CHECK(s2.reducible_fraction == 1.0);
    CHECK(s2.mean_shortening == doctest::Approx(1.0 - 1.0 / 8.0).epsilon(1e-12));
    CHECK(s2.compression_ratios == std::vector<double>{8.0, 8.0});
}

TEST_CASE("reducibility is invariant under dataset shuffling") {
    std::mt19937_64 rng(63);
    SynthConfig cfg;
    cfg.seed = 8;
    LabeledDataset data = generate_synthetic(cfg);
    const auto before = reducibility_stats(data);
    std::shuffle(data.items.begin(), data.items.end(), rng);
    const auto after = reducibility_stats(data);
    CHECK(before.reducible_fraction == after.reducible_fraction);
    CHECK(before.mean_shortening == doctest::Approx(after.mean_shortening).epsilon(1e-12));
}

TEST_CASE("correlation coefficients on monotone data") {
    const std::vector<double> xs = {1, 2, 3, 4, 5};
    const std::vector<double> up = {2, 4, 6, 8, 10};
    const auto c = correlations(xs, up);
    CHECK(c.pearson == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.spearman == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.kendall == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<double> down = {9, 7, 5, 3, 1};
    const auto d = correlations(xs, down);
    CHECK(d.pearson == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(d.spearman == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(d.kendall == doctest::Approx(-1.0).epsilon(1e-12));

    // a nonlinear but monotone map keeps rank correlations at 1
    const std::vector<double> curved = {1, 8, 27, 64, 125};
    const auto e = correlations(xs, curved);
    CHECK(e.pearson < 1.0);
    CHECK(e.spearman == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.kendall == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sign test posteriors land where the differences point") {
    const auto all_rope = bayes_sign_test(std::vector<double>(20, 0.0), 0.005, 1.0, 5000, 1);
    CHECK(all_rope.p_rope == 1.0);
    CHECK(all_rope.p_left + all_rope.p_rope + all_rope.p_right == doctest::Approx(1.0).epsilon(1e-9));

    const auto right = bayes_sign_test(std::vector<double>(20, 0.1), 0.005, 1.0, 20000, 2);
    CHECK(right.p_right > 0.9);

    std::vector<double> sym;
    for (int i = 0; i < 15; ++i) {
        sym.push_back(0.1);
        sym.push_back(-0.1);
    }
    const auto both = bayes_sign_test(sym, 0.005, 1.0, 40000, 3);
    CHECK(std::fabs(both.p_left - both.p_right) < 0.05);
    CHECK(both.p_left + both.p_rope + both.p_right == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(bayes_sign_test({}, 0.005, 1.0, 100, 1), std::invalid_argument);
    CHECK_THROWS_AS(bayes_sign_test({0.1}, -1.0, 1.0, 100, 1), std::invalid_argument);
}

TEST_CASE("sign test only sees the counts, not the ordering") {
    std::vector<double> diffs = {0.02, -0.03, 0.0, 0.11, -0.2, 0.004, 0.05};
    const auto a = bayes_sign_test(diffs, 0.005, 1.0, 5000, 9);
    std::reverse(diffs.begin(), diffs.end());
    const auto b = bayes_sign_test(diffs, 0.005, 1.0, 5000, 9);
    CHECK(a.p_left == b.p_left);
    CHECK(a.p_rope == b.p_rope);
    CHECK(a.p_right == b.p_right);
}

TEST_CASE("records csv layout") {
    std::ostringstream os;
    write_records_csv(os, {{"d", "m", "metric", 1.5, 2, 7, 0.25}});
    CHECK(os.str() == "dataset,method,metric,value,fold,seed,wall_ms\nd,m,metric,1.5,2,7,0.25\n");
}

TEST_CASE("timing bench emits sound records") {
    std::mt19937_64 rng(62);
    LabeledDataset data{"bench", {}};
    for (int i = 0; i < 6; ++i)
        data.items.push_back({TimeSeries(120, static_cast<double>(i % 2)), "a"});
    const auto records = timing_bench(
        data, {DistanceKind::euclidean, DistanceKind::dtw, DistanceKind::twi}, 4, 3, 11);

    std::vector<double> dtw_medians, twi_medians;
    bool saw_rho = false;
    for (const auto& r : records) {
        if (r.metric == "rho_ss") {
            saw_rho = true;
            CHECK(r.value > 0.5);  // constant series compress almost entirely
        }
        if (r.metric == "time_ms_median" && r.method == "dtw") dtw_medians.push_back(r.value);
        if (r.metric == "time_ms_median" && r.method == "twi") twi_medians.push_back(r.value);
    }
    CHECK(saw_rho);
    REQUIRE(dtw_medians.size() == 4);
    REQUIRE(twi_medians.size() == 4);
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    CHECK(median(twi_medians) <= median(dtw_medians));

    // unequal lengths suppress the euclidean rows
    LabeledDataset ragged{"ragged", {{{1, 2, 3}, "a"}, {{1, 2}, "a"}}};
    for (const auto& r : timing_bench(ragged, {DistanceKind::euclidean}, 2, 2, 1))
        CHECK(r.metric == "rho_ss");

    // pair sampling is pinned by the seed
    const auto run1 = timing_bench(data, {DistanceKind::twi}, 5, 1, 77);
    const auto run2 = timing_bench(data, {DistanceKind::twi}, 5, 1, 77);
    REQUIRE(run1.size() == run2.size());
    for (std::size_t i = 0; i < run1.size(); ++i)
        if (run1[i].metric == "rho_ss") CHECK(run1[i].value == run2[i].value);
}

TEST_CASE("synthetic study is deterministic and separable rows stay clean") {
    const auto a = run_synth_study({"E2"}, 3, 123, 1);
    const auto b = run_synth_study({"E2"}, 3, 123, 1);
    REQUIRE(a.summary.size() == 1);
    CHECK(a.summary[0].err_dtw == b.summary[0].err_dtw);
    CHECK(a.summary[0].err_twi == b.summary[0].err_twi);
    CHECK(a.summary[0].err_euc == b.summary[0].err_euc);
    CHECK(a.summary[0].err_dtw <= 0.05);
    CHECK(a.summary[0].err_twi <= 0.05);
}

TEST_CASE("split study on separable data") {
    LabeledDataset train{"toy", {}}, test{"toy", {}};
    for (int i = 0; i < 6; ++i) {
        train.items.push_back({{0.0, 0.01 * i}, "low"});
        train.items.push_back({{5.0, 5.0 + 0.01 * i}, "high"});
        test.items.push_back({{0.0, 0.02 * i}, "low"});
        test.items.push_back({{5.0, 5.0 + 0.02 * i}, "high"});
    }
    const auto records =
        run_split_study(train, test, {DistanceKind::euclidean, DistanceKind::dtw}, std::nullopt, 1);
    REQUIRE(records.size() == 2);
    for (const auto& r : records) CHECK(r.value == 0.0);
}

TEST_CASE("cv study over a directory") {
    TempDir tmp;
    LabeledDataset data{"toy", {}};
    for (int i = 0; i < 10; ++i) {
        data.items.push_back({{0.0, 0.01 * i, 0.0}, "low"});
        data.items.push_back({{7.0, 7.0 + 0.01 * i, 7.0}, "high"});
    }
    write_ucr((tmp.path / "toy_TRAIN.tsv").string(), data);
    const auto records =
        run_cv_study(tmp.path.string(), {DistanceKind::dtw}, 5, 3, true, std::nullopt, 1);
    // five folds plus the mean and stratification rows
    REQUIRE(records.size() == 7);
    for (const auto& r : records) {
        if (r.metric == "accuracy_mean") CHECK(r.value == 1.0);
        if (r.metric == "stratified") CHECK(r.value == 1.0);
    }
}

TEST_CASE("dtw and twi agree fold-for-fold on irreducible data") {
    std::mt19937_64 rng(64);
    LabeledDataset data{"alt", {}};
    for (int i = 0; i < 20; ++i) {
        // strictly alternating series are their own condensed forms
        TimeSeries x;
        const double lo = i % 2 ? 0.0 : 3.0;
        for (int j = 0; j < 8; ++j) x.push_back(j % 2 ? lo + 1.0 + 0.01 * i : lo);
        data.items.push_back({std::move(x), i % 2 ? "odd" : "even"});
    }
    for (const auto& item : data.items) CHECK(condense(item.values) == item.values);
    NnConfig a;
    a.distance = DistanceKind::dtw;
    a.seed = 5;
    NnConfig b = a;
    b.distance = DistanceKind::twi;
    const auto cv_dtw = cross_validate(data, 4, a);
    const auto cv_twi = cross_validate(data, 4, b);
    CHECK(cv_dtw.fold_accuracies == cv_twi.fold_accuracies);
}

TEST_CASE("column segmentation alternates train and test windows") {
    TempDir tmp;
    std::ostringstream csv;
    csv << "ovenA,ovenB\n";
    const int rows = 1440 * 4 + 100;  // four full one-day windows plus remainder
    for (int i = 0; i < rows; ++i) csv << (i % 7) << ',' << (i % 3) << '\n';
    const auto file = tmp.path / "power.csv";
    write_file(file, csv.str());

    const auto split = segment_columns(file.string(), 1);
    CHECK(split.train.size() == 4);  // windows 1 and 3 per column
    CHECK(split.test.size() == 4);
    for (const auto& item : split.train.items) CHECK(item.values.size() == 1440);
    CHECK(split.train.items[0].label == "ovenA");
    CHECK(split.test.items[0].label == "ovenA");
    CHECK_THROWS_AS(segment_columns(file.string(), 0), std::invalid_argument);
}

TEST_CASE("seed mixing separates tasks") {
    CHECK(mix_seed(1, 1) != mix_seed(1, 2));
    CHECK(mix_seed(1, 1) != mix_seed(2, 1));
    CHECK(mix_seed(5, 9) == mix_seed(5, 9));
}

}  // TEST_SUITE
