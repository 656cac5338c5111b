#include "twidist/nn.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

#include "twidist/parallel.hpp"

namespace twidist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TimeSeries align_to(const TimeSeries& x, std::size_t target, AlignmentKind kind) {
    if (x.size() == target) return x;
    if (kind == AlignmentKind::linear_resample && x.size() >= 2 && target >= 2)
        return resample_linear(x, target);
    return align_truncate_or_repeat(x, target);
}

struct ScanState {
    double best = kInf;
    std::size_t best_index = 0;
    std::size_t pruned = 0;
    bool found = false;

    void offer(std::size_t index, double d) {
        if (!found || d < best) {
            best = d;
            best_index = index;
            found = true;
        }
    }
};

void scan_plain(const LabeledDataset& train, const TimeSeries& query, const NnConfig& cfg,
                ScanState& st) {
    const DistanceKind kind = cfg.distance;
    const TimeSeries cq = kind == DistanceKind::twi ? condense(query, cfg.eq) : TimeSeries{};
    for (std::size_t c = 0; c < train.size(); ++c) {
        const TimeSeries& cand = train.items[c].values;
        if (kind == DistanceKind::euclidean) {
            st.offer(c, euclidean(query, align_to(cand, query.size(), cfg.alignment)));
            continue;
        }
        const TimeSeries& a = kind == DistanceKind::twi ? cq : query;
        const TimeSeries b = kind == DistanceKind::twi ? condense(cand, cfg.eq) : cand;
        // abandoning against the best-so-far cannot change the winner
        auto d = dtw_early_abandon(a, b, st.found ? st.best : kInf);
        if (!d) {
            ++st.pruned;
            continue;
        }
        st.offer(c, *d);
    }
}

void scan_opt_dtw(const LabeledDataset& train, const TimeSeries& query, const NnConfig& cfg,
                  ScanState& st) {
    const BandConfig& band = *cfg.band;
    const int radius = band.effective_radius(query.size(), query.size());
    for (std::size_t c = 0; c < train.size(); ++c) {
        const TimeSeries aligned = align_to(train.items[c].values, query.size(), cfg.alignment);
        if (st.found) {
            if (lb_keogh(query, aligned, radius) >= st.best) {
                ++st.pruned;
                continue;
            }
            if (lb_lemire(query, aligned, radius) >= st.best) {
                ++st.pruned;
                continue;
            }
        }
        auto d = dtw_banded_early_abandon(query, aligned, band, st.found ? st.best : kInf);
        if (!d) {
            ++st.pruned;
            continue;
        }
        st.offer(c, *d);
    }
}

void scan_opt_twi(const LabeledDataset& train, const TimeSeries& query, const NnConfig& cfg,
                  ScanState& st) {
    const BandConfig& band = *cfg.band;
    const TimeSeries cq = condense(query, cfg.eq);
    for (std::size_t c = 0; c < train.size(); ++c) {
        const TimeSeries cc = condense(train.items[c].values, cfg.eq);
        if (st.found) {
            if (cc.size() == cq.size()) {
                const int radius = band.effective_radius(cq.size(), cq.size());
                if (lb_keogh(cq, cc, radius) >= st.best || lb_lemire(cq, cc, radius) >= st.best) {
                    ++st.pruned;
                    continue;
                }
            } else if (cfg.lb_on_resampled && cq.size() >= 2 && cc.size() >= 2) {
                // heuristic filter: bounds on a length-aligned copy are not
                // provably below the final distance
                const TimeSeries rc = resample_linear(cc, cq.size());
                const int radius = band.effective_radius(cq.size(), cq.size());
                if (lb_keogh(cq, rc, radius) >= st.best) {
                    ++st.pruned;
                    continue;
                }
            }
        }
        auto d = dtw_banded_early_abandon(cq, cc, band, st.found ? st.best : kInf);
        if (!d) {
            ++st.pruned;
            continue;
        }
        st.offer(c, *d);
    }
}

}  // namespace

const char* to_string(DistanceKind kind) {
    switch (kind) {
        case DistanceKind::euclidean: return "euc";
        case DistanceKind::dtw: return "dtw";
        case DistanceKind::twi: return "twi";
        case DistanceKind::opt_dtw: return "opt-dtw";
        case DistanceKind::opt_twi: return "opt-twi";
    }
    return "?";
}

std::optional<DistanceKind> parse_distance_kind(const std::string& name) {
    if (name == "euc" || name == "euclidean") return DistanceKind::euclidean;
    if (name == "dtw") return DistanceKind::dtw;
    if (name == "twi") return DistanceKind::twi;
    if (name == "opt-dtw" || name == "optdtw") return DistanceKind::opt_dtw;
    if (name == "opt-twi" || name == "opttwi") return DistanceKind::opt_twi;
    return std::nullopt;
}

Prediction classify_1nn(const LabeledDataset& train, const TimeSeries& query, const NnConfig& cfg) {
    if (train.empty()) throw std::invalid_argument("classify_1nn: empty training set");
    if (query.empty()) throw std::invalid_argument("classify_1nn: empty query");
    const bool opt = cfg.distance == DistanceKind::opt_dtw || cfg.distance == DistanceKind::opt_twi;
    if (opt && !cfg.band) throw std::invalid_argument("classify_1nn: opt variant requires a band");

    ScanState st;
    switch (cfg.distance) {
        case DistanceKind::opt_dtw: scan_opt_dtw(train, query, cfg, st); break;
        case DistanceKind::opt_twi: scan_opt_twi(train, query, cfg, st); break;
        default: scan_plain(train, query, cfg, st); break;
    }
    Prediction p;
    p.label = train.items[st.best_index].label;
    p.neighbor_index = st.best_index;
    p.distance_value = st.best;
    p.pruned_count = st.pruned;
    return p;
}

std::vector<Prediction> classify_batch(const LabeledDataset& train,
                                       const std::vector<TimeSeries>& queries, const NnConfig& cfg,
                                       unsigned threads) {
    std::vector<Prediction> out(queries.size());
    parallel_for(queries.size(), [&](std::size_t q) { out[q] = classify_1nn(train, queries[q], cfg); },
                 threads);
    return out;
}

CvResult cross_validate(const LabeledDataset& data, int folds, const NnConfig& cfg,
                        unsigned threads) {
    if (data.empty()) throw std::invalid_argument("cross_validate: empty dataset");
    if (folds < 2) throw std::invalid_argument("cross_validate: need at least 2 folds");
    if (static_cast<std::size_t>(folds) > data.size())
        throw std::invalid_argument("cross_validate: more folds than items");

    std::map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < data.size(); ++i) by_label[data.items[i].label].push_back(i);
    bool stratified = true;
    for (const auto& [label, members] : by_label)
        if (members.size() < static_cast<std::size_t>(folds)) stratified = false;

    std::mt19937_64 rng(cfg.seed);
    std::vector<int> fold_of(data.size(), 0);
    if (stratified) {
        for (auto& [label, members] : by_label) {
            std::shuffle(members.begin(), members.end(), rng);
            for (std::size_t i = 0; i < members.size(); ++i)
                fold_of[members[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
        }
    } else {
        std::vector<std::size_t> all(data.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        std::shuffle(all.begin(), all.end(), rng);
        for (std::size_t i = 0; i < all.size(); ++i)
            fold_of[all[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
    }

    CvResult res;
    res.stratified = stratified;
    double sum = 0.0;
    for (int f = 0; f < folds; ++f) {
        LabeledDataset train{data.name, {}};
        std::vector<TimeSeries> queries;
        std::vector<std::string> truth;
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (fold_of[i] == f) {
                queries.push_back(data.items[i].values);
                truth.push_back(data.items[i].label);
            } else {
                train.items.push_back(data.items[i]);
            }
        }
        const auto preds = classify_batch(train, queries, cfg, threads);
        std::size_t correct = 0;
        for (std::size_t q = 0; q < preds.size(); ++q)
            if (preds[q].label == truth[q]) ++correct;
        const double acc = queries.empty() ? 1.0 : static_cast<double>(correct) / queries.size();
        res.fold_accuracies.push_back(acc);
        sum += acc;
    }
    res.mean_accuracy = sum / static_cast<double>(folds);
    return res;
}

double error_rate(const std::vector<std::string>& predicted, const std::vector<std::string>& truth) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("error_rate: size mismatch");
    if (predicted.empty()) throw std::invalid_argument("error_rate: empty input");
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] != truth[i]) ++wrong;
    return static_cast<double>(wrong) / static_cast<double>(predicted.size());
}

}  // namespace twidist
