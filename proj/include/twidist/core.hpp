#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "twidist/words.hpp"

namespace twidist {

/// A univariate time series: finite, non-empty outside the word algebra,
/// every value finite after ingestion.
using TimeSeries = std::vector<double>;

/// Value equality used for run condensation. Exact comparison by default;
/// with a positive tolerance, candidates are compared against the first
/// element of the current run (anchored, so runs stay transitive).
struct ValueEq {
    double tolerance = 0.0;
    bool operator()(double a, double b) const {
        if (tolerance <= 0.0) return a == b;
        return std::fabs(a - b) <= tolerance;
    }
};

inline TimeSeries condense(const TimeSeries& x, ValueEq eq = {}) {
    return words::condense(x, eq);
}

inline bool is_irreducible(const TimeSeries& x, ValueEq eq = {}) {
    return words::is_irreducible(x, eq);
}

/// An irreducible series: the canonical representative of all series that
/// compress to it. Construction condenses; the invariant holds by build.
class CondensedSeries {
public:
    CondensedSeries() = default;
    explicit CondensedSeries(const TimeSeries& x, ValueEq eq = {}) : values_(condense(x, eq)) {}

    const TimeSeries& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

private:
    TimeSeries values_;
};

struct LabeledSeries {
    TimeSeries values;
    std::string label;
};

struct LabeledDataset {
    std::string name;
    std::vector<LabeledSeries> items;

    bool empty() const { return items.empty(); }
    std::size_t size() const { return items.size(); }
};

/// Shifts to sample mean 0 and scales to standard deviation 1 (population
/// formula, divide by n). Inputs with std below 1e-12 map to all zeros.
TimeSeries z_normalize(const TimeSeries& x);

/// Piecewise-linear resampling over the normalized index axis. Endpoints are
/// preserved exactly. Requires target_len >= 2 and |x| >= 2.
TimeSeries resample_linear(const TimeSeries& x, std::size_t target_len);

/// Length alignment by prefix truncation or last-value repetition. The
/// repeated tail makes the result an expansion of the input.
TimeSeries align_truncate_or_repeat(const TimeSeries& x, std::size_t target_len);

/// Ingestion clean-up: trailing NaN padding is dropped, interior NaN or any
/// non-finite value is an error, as is an empty result.
TimeSeries finalize_ingested(TimeSeries raw);

}  // namespace twidist
