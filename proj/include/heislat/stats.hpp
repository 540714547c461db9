#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace heislat {

/// Neumaier-compensated sum in index order; the fixed reduction order keeps
/// aggregates bit-identical across worker counts.
inline double compensated_sum(std::span<const double> xs) {
    double sum = 0.0, comp = 0.0;
    for (const double x : xs) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

struct MeanSe {
    double mean = 0;
    double se = 0;
    long long n = 0;
};

inline MeanSe mean_se(std::span<const double> xs) {
    const long long n = static_cast<long long>(xs.size());
    if (n == 0) return {};
    const double mean = compensated_sum(xs) / static_cast<double>(n);
    if (n == 1) return {mean, 0.0, 1};
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = (xs[i] - mean) * (xs[i] - mean);
    const double var = compensated_sum(sq) / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

/// Binomial proportion with its standard error.
inline MeanSe proportion_se(long long hits, long long n) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n};
}

}  // namespace heislat
