#include "twidist/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace twidist {

TimeSeries z_normalize(const TimeSeries& x) {
    if (x.empty()) throw std::invalid_argument("z_normalize: empty series");
    const double n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / n);
    TimeSeries out(x.size());
    if (sd < 1e-12) {
        std::fill(out.begin(), out.end(), 0.0);
        return out;
    }
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mean) / sd;
    return out;
}

TimeSeries resample_linear(const TimeSeries& x, std::size_t target_len) {
    if (x.size() < 2) throw std::invalid_argument("resample_linear: need at least 2 samples");
    if (target_len < 2) throw std::invalid_argument("resample_linear: target length must be >= 2");
    if (target_len == x.size()) return x;
    TimeSeries out(target_len);
    out.front() = x.front();
    out.back() = x.back();
    const double scale = static_cast<double>(x.size() - 1) / static_cast<double>(target_len - 1);
    for (std::size_t l = 1; l + 1 < target_len; ++l) {
        const double pos = static_cast<double>(l) * scale;
        const std::size_t i = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(i);
        out[l] = x[i] + frac * (x[i + 1] - x[i]);
    }
    return out;
}

TimeSeries align_truncate_or_repeat(const TimeSeries& x, std::size_t target_len) {
    if (x.empty()) throw std::invalid_argument("align_truncate_or_repeat: empty series");
    if (target_len < 1) throw std::invalid_argument("align_truncate_or_repeat: target length must be >= 1");
    if (x.size() == target_len) return x;
    TimeSeries out;
    out.reserve(target_len);
    if (x.size() > target_len) {
        out.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(target_len));
    } else {
        out = x;
        out.resize(target_len, x.back());
    }
    return out;
}

TimeSeries finalize_ingested(TimeSeries raw) {
    while (!raw.empty() && std::isnan(raw.back())) raw.pop_back();
    if (raw.empty()) throw std::invalid_argument("ingested series is empty after NaN trimming");
    for (double v : raw) {
        if (std::isnan(v)) throw std::invalid_argument("ingested series has interior NaN");
        if (!std::isfinite(v)) throw std::invalid_argument("ingested series has non-finite value");
    }
    return raw;
}

}  // namespace twidist
