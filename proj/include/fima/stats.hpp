#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace fima {

// Deterministic pairwise sum; independent of thread scheduling because the
// caller stores addends in replica order first.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    std::vector<double> acc(xs.begin(), xs.end());
    std::size_t n = acc.size();
    while (n > 1) {
        const std::size_t half = n / 2;
        for (std::size_t i = 0; i < half; ++i) acc[i] += acc[n - 1 - i];
        n = (n + 1) / 2;
    }
    return acc[0];
}

inline double mean(std::span<const double> xs) {
    return pairwise_sum(xs) / static_cast<double>(xs.size());
}

inline double median(std::span<const double> xs) {
    std::vector<double> v(xs.begin(), xs.end());
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double hi = v[mid];
    if (v.size() % 2 == 0) {
        std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid) - 1,
                         v.begin() + static_cast<std::ptrdiff_t>(mid));
        return 0.5 * (v[mid - 1] + hi);
    }
    return hi;
}

inline double quantile(std::span<const double> xs, double p) {
    std::vector<double> v(xs.begin(), xs.end());
    std::sort(v.begin(), v.end());
    const double pos = p * static_cast<double>(v.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    if (i + 1 < v.size()) return v[i] * (1.0 - frac) + v[i + 1] * frac;
    return v[i];
}

}  // namespace fima
