#include "twidist/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace twidist {

namespace fs = std::filesystem;

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t task) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (task + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char delim) {
    std::vector<std::string> fields;
    if (delim == ' ') {
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) fields.push_back(tok);
        return fields;
    }
    std::string tok;
    std::istringstream ss(line);
    while (std::getline(ss, tok, delim)) fields.push_back(tok);
    return fields;
}

char detect_delimiter(const std::string& line) {
    if (line.find('\t') != std::string::npos) return '\t';
    if (line.find(',') != std::string::npos) return ',';
    return ' ';
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_value(const std::string& tok, const std::string& path, std::size_t line_no) {
    const std::string t = trim(tok);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
        throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": bad number '" + t + "'");
    return v;
}

}  // namespace

LabeledDataset load_ucr(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_ucr: cannot open " + path);
    LabeledDataset data;
    data.name = fs::path(path).stem().string();
    std::string line;
    std::size_t line_no = 0;
    char delim = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        if (delim == 0) delim = detect_delimiter(line);
        const auto fields = split_fields(line, delim);
        if (fields.size() < 2)
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": need label plus values");
        LabeledSeries item;
        item.label = trim(fields[0]);
        if (item.label.empty())
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": empty label");
        TimeSeries raw;
        raw.reserve(fields.size() - 1);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            const std::string t = trim(fields[i]);
            if (t.empty()) continue;  // tolerate trailing delimiters
            raw.push_back(parse_value(t, path, line_no));
        }
        try {
            item.values = finalize_ingested(std::move(raw));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        data.items.push_back(std::move(item));
    }
    if (data.items.empty()) throw std::invalid_argument("load_ucr: no series in " + path);
    return data;
}

std::vector<DatasetFiles> discover_datasets(const std::string& dir) {
    if (!fs::is_directory(dir)) throw std::invalid_argument("discover_datasets: not a directory: " + dir);
    std::vector<fs::path> candidates;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file()) candidates.push_back(entry.path());
        if (entry.is_directory())
            for (const auto& sub : fs::directory_iterator(entry.path()))
                if (sub.is_regular_file()) candidates.push_back(sub.path());
    }
    std::sort(candidates.begin(), candidates.end());

    std::vector<DatasetFiles> out;
    std::vector<fs::path> plain;
    for (const auto& p : candidates) {
        const std::string stem = p.stem().string();
        const auto pos = stem.find("_TRAIN");
        if (pos != std::string::npos) {
            DatasetFiles d;
            d.name = stem.substr(0, pos);
            d.train_path = p.string();
            std::string test_stem = stem;
            test_stem.replace(pos, 6, "_TEST");
            const fs::path test = p.parent_path() / (test_stem + p.extension().string());
            if (fs::exists(test)) d.test_path = test.string();
            out.push_back(std::move(d));
        } else if (stem.find("_TEST") == std::string::npos) {
            plain.push_back(p);
        }
    }
    if (out.empty())
        for (const auto& p : plain)
            out.push_back(DatasetFiles{p.stem().string(), p.string(), std::nullopt});
    std::sort(out.begin(), out.end(),
              [](const DatasetFiles& a, const DatasetFiles& b) { return a.name < b.name; });
    return out;
}

LabeledDataset load_dataset(const DatasetFiles& files, bool merge) {
    LabeledDataset data = load_ucr(files.train_path);
    data.name = files.name;
    if (merge && files.test_path) {
        LabeledDataset test = load_ucr(*files.test_path);
        data.items.insert(data.items.end(), test.items.begin(), test.items.end());
    }
    return data;
}

void write_ucr(const std::string& path, const LabeledDataset& data) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("write_ucr: cannot open " + path);
    out.precision(17);
    for (const auto& item : data.items) {
        out << item.label;
        for (double v : item.values) out << '\t' << v;
        out << '\n';
    }
}

LabeledDataset generate_synthetic(const SynthConfig& cfg) {
    if (cfg.n_series < 2) throw std::invalid_argument("generate_synthetic: need at least 2 series");
    if (cfg.cylinder_len < 1 || cfg.cylinder_len > cfg.series_len)
        throw std::invalid_argument("generate_synthetic: cylinder must fit the series");
    if (cfg.theta_b < 0 || cfg.theta_c < 0)
        throw std::invalid_argument("generate_synthetic: noise bounds must be >= 0");

    std::mt19937_64 rng(cfg.seed);
    // keep base samples on both flanks of the cylinder whenever the series
    // is long enough, so every series is base-cylinder-base shaped
    const bool interior = cfg.series_len >= cfg.cylinder_len + 2;
    std::uniform_int_distribution<int> start_of(interior ? 1 : 0,
                                                cfg.series_len - cfg.cylinder_len - (interior ? 1 : 0));
    auto noise = [&rng](double theta) {
        if (theta <= 0.0) return 0.0;
        return std::uniform_real_distribution<double>(0.0, theta)(rng);
    };

    LabeledDataset data;
    data.name = "synthetic";
    const int half = cfg.n_series / 2;
    for (int s = 0; s < cfg.n_series; ++s) {
        const bool positive = s < half;
        const double base = positive ? cfg.b_plus : cfg.b_minus;
        const double top = positive ? cfg.c_plus : cfg.c_minus;
        const int start = start_of(rng);
        const double series_base_noise = cfg.base_noise_per_element ? 0.0 : noise(cfg.theta_b);

        TimeSeries x(static_cast<std::size_t>(cfg.series_len));
        for (int i = 0; i < cfg.series_len; ++i) {
            if (i >= start && i < start + cfg.cylinder_len) {
                x[static_cast<std::size_t>(i)] = top + noise(cfg.theta_c);
            } else {
                x[static_cast<std::size_t>(i)] =
                    base + (cfg.base_noise_per_element ? noise(cfg.theta_b) : series_base_noise);
            }
        }
        if (cfg.z_transform) x = z_normalize(x);
        data.items.push_back({std::move(x), positive ? "+1" : "-1"});
    }
    return data;
}

SynthConfig synth_row_config(const std::string& row_id) {
    SynthConfig cfg;  // defaults match E1
    if (row_id == "E1") {
        return cfg;
    } else if (row_id == "E2") {
        cfg.theta_c = 0.1;
        return cfg;
    } else if (row_id == "E3" || row_id == "E4") {
        // mirror of E1/E2: the class signal moves to the cylinder height and
        // the noise to the (constant) base level
        cfg.b_minus = 0.0;
        cfg.theta_b = row_id == "E3" ? 1.0 : 0.1;
        cfg.c_minus = 1.05;
        cfg.theta_c = 0.08;
        return cfg;
    } else if (row_id == "E5") {
        cfg.z_transform = true;
        return cfg;
    }
    throw std::invalid_argument("synth_row_config: unknown row " + row_id);
}

ReducibilityStats reducibility_stats(const LabeledDataset& data, ValueEq eq) {
    if (data.empty()) throw std::invalid_argument("reducibility_stats: empty dataset");
    ReducibilityStats st;
    st.compression_ratios.reserve(data.size());
    std::size_t reducible = 0;
    double shortening_sum = 0.0;
    for (const auto& item : data.items) {
        const std::size_t full = item.values.size();
        const std::size_t cond = condense(item.values, eq).size();
        st.compression_ratios.push_back(static_cast<double>(full) / static_cast<double>(cond));
        if (cond < full) {
            ++reducible;
            shortening_sum += 1.0 - static_cast<double>(cond) / static_cast<double>(full);
        }
    }
    st.reducible_fraction = static_cast<double>(reducible) / static_cast<double>(data.size());
    st.mean_shortening = reducible == 0 ? 0.0 : shortening_sum / static_cast<double>(reducible);
    return st;
}

namespace {

std::vector<double> ranks_with_ties(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = avg;
        i = j + 1;
    }
    return rank;
}

double pearson_of(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

Correlations correlations(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("correlations: inputs must be equal-length and non-empty");
    Correlations c;
    c.pearson = pearson_of(xs, ys);
    c.spearman = pearson_of(ranks_with_ties(xs), ranks_with_ties(ys));

    // Kendall tau-b with tie corrections
    long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
    const std::size_t n = xs.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = xs[i] - xs[j], dy = ys[i] - ys[j];
            if (dx == 0.0 && dy == 0.0) continue;
            if (dx == 0.0) {
                ++ties_x;
            } else if (dy == 0.0) {
                ++ties_y;
            } else if ((dx > 0) == (dy > 0)) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const double n0 = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
    const double denom = std::sqrt((n0 - static_cast<double>(ties_x)) * (n0 - static_cast<double>(ties_y)));
    c.kendall = denom <= 0.0 ? 0.0 : static_cast<double>(concordant - discordant) / denom;
    return c;
}

BayesResult bayes_sign_test(const std::vector<double>& diffs, double rope, double prior_strength,
                            int mc_samples, std::uint64_t seed) {
    if (diffs.empty()) throw std::invalid_argument("bayes_sign_test: empty differences");
    if (rope < 0) throw std::invalid_argument("bayes_sign_test: rope must be >= 0");
    if (prior_strength < 0) throw std::invalid_argument("bayes_sign_test: prior must be >= 0");
    if (mc_samples < 1) throw std::invalid_argument("bayes_sign_test: need at least one sample");

    double alpha[3] = {0.0, prior_strength, 0.0};
    for (double d : diffs) {
        if (d < -rope)
            alpha[0] += 1.0;
        else if (d > rope)
            alpha[2] += 1.0;
        else
            alpha[1] += 1.0;
    }

    std::mt19937_64 rng(seed);
    std::size_t wins[3] = {0, 0, 0};
    for (int s = 0; s < mc_samples; ++s) {
        double g[3];
        for (int k = 0; k < 3; ++k)
            g[k] = alpha[k] > 0.0 ? std::gamma_distribution<double>(alpha[k], 1.0)(rng) : 0.0;
        int best = 0;
        if (g[1] > g[best]) best = 1;
        if (g[2] > g[best]) best = 2;
        ++wins[best];
    }
    BayesResult r;
    r.p_left = static_cast<double>(wins[0]) / mc_samples;
    r.p_rope = static_cast<double>(wins[1]) / mc_samples;
    r.p_right = static_cast<double>(wins[2]) / mc_samples;
    return r;
}

void write_records_csv(std::ostream& os, const std::vector<ExperimentRecord>& records) {
    os << "dataset,method,metric,value,fold,seed,wall_ms\n";
    for (const auto& r : records) {
        os << r.dataset << ',' << r.method << ',' << r.metric << ',' << r.value << ',' << r.fold
           << ',' << r.seed << ',' << r.wall_ms << '\n';
    }
}

std::vector<ExperimentRecord> timing_bench(const LabeledDataset& data,
                                           const std::vector<DistanceKind>& methods, int pairs,
                                           int reps, std::uint64_t seed) {
    if (data.size() < 2) throw std::invalid_argument("timing_bench: need at least 2 series");
    if (pairs < 1 || reps < 1) throw std::invalid_argument("timing_bench: pairs and reps must be >= 1");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
    std::vector<std::pair<std::size_t, std::size_t>> sampled;
    sampled.reserve(static_cast<std::size_t>(pairs));
    for (int p = 0; p < pairs; ++p) {
        std::size_t a = pick(rng), b = pick(rng);
        while (b == a) b = pick(rng);
        sampled.emplace_back(a, b);
    }

    using clock = std::chrono::steady_clock;
    std::vector<ExperimentRecord> records;
    for (int p = 0; p < pairs; ++p) {
        const TimeSeries& x = data.items[sampled[static_cast<std::size_t>(p)].first].values;
        const TimeSeries& y = data.items[sampled[static_cast<std::size_t>(p)].second].values;
        const std::size_t cx = condense(x).size(), cy = condense(y).size();
        records.push_back({data.name, "pair", "rho_ss", space_saving_ratio(x.size(), y.size(), cx, cy),
                           p, seed, 0.0});

        double dtw_mean = 0.0;
        std::vector<std::pair<DistanceKind, double>> means;
        for (DistanceKind kind : methods) {
            if (kind == DistanceKind::euclidean && x.size() != y.size()) continue;
            std::vector<double> times;
            times.reserve(static_cast<std::size_t>(reps));
            double guard = 0.0;
            for (int rep = 0; rep < reps; ++rep) {
                const auto t0 = clock::now();
                switch (kind) {
                    case DistanceKind::euclidean: guard += euclidean(x, y); break;
                    case DistanceKind::twi: guard += twi(x, y); break;
                    default: guard += dtw(x, y); break;
                }
                const auto t1 = clock::now();
                times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
            }
            if (!std::isfinite(guard)) throw std::runtime_error("timing_bench: non-finite distance");
            const double mean = std::accumulate(times.begin(), times.end(), 0.0) /
                                static_cast<double>(times.size());
            std::nth_element(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(times.size() / 2),
                             times.end());
            const double median = times[times.size() / 2];
            if (kind == DistanceKind::dtw) dtw_mean = mean;
            means.emplace_back(kind, mean);
            records.push_back({data.name, to_string(kind), "time_ms_mean", mean, p, seed, mean});
            records.push_back({data.name, to_string(kind), "time_ms_median", median, p, seed, mean});
        }
        if (dtw_mean > 0.0)
            for (const auto& [kind, mean] : means)
                if (kind != DistanceKind::dtw && mean > 0.0)
                    records.push_back(
                        {data.name, to_string(kind), "speedup_vs_dtw", dtw_mean / mean, p, seed, mean});
    }
    return records;
}

}  // namespace twidist
