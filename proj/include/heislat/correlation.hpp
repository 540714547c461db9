#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "heislat/linalg.hpp"
#include "heislat/rng.hpp"

namespace heislat {

/// Correlation of the two level events on the torus, keyed on the orbit
/// class only: eps^2 off the diagonal determinant, eps on the D = 0 equal
/// pair, 0 on the D = 0 opposite pair.
inline double cor_exact(Vec2i m, Vec2i n, double eps, double /*z*/) {
    if (gcd_ll(m.x, m.y) != 1 || gcd_ll(n.x, n.y) != 1)
        throw std::domain_error("cor_exact: vectors must be primitive");
    if (!(eps > 0 && eps < 1)) throw std::domain_error("cor_exact: need 0 < eps < 1");
    const long long d = cross(m, n);
    if (d != 0) return eps * eps;
    return n == m ? eps : 0.0;
}

struct CorEstimate {
    double value = 0;
    double se = 0;
    long long samples = 0;
};

/// Radical inverse in the given base (van der Corput).
inline double radical_inverse(std::uint64_t i, unsigned base) {
    double inv = 1.0 / base, f = inv, x = 0.0;
    while (i > 0) {
        x += static_cast<double>(i % base) * f;
        i /= base;
        f *= inv;
    }
    return x;
}

/// Quasi-Monte Carlo estimate of the torus integral of
/// 1(frac(z + u.m) < eps) * 1(frac(z + u.n) < eps) over u in [0,1)^2,
/// using a Halton (2,3) point set with random torus shifts per block.
/// Block means are independent and unbiased, so the reported standard
/// error is a valid one.
inline CorEstimate cor_numeric(Vec2i m, Vec2i n, double eps, double z, long long samples,
                               std::uint64_t seed = 0x5eed0c0de5eedull) {
    if (samples < 10'000) throw std::invalid_argument("cor_numeric: samples must be >= 10^4");
    if (!(eps > 0 && eps < 1)) throw std::domain_error("cor_numeric: need 0 < eps < 1");

    const int blocks = 64;
    const long long per_block = samples / blocks;
    std::vector<Vec2> base_points(static_cast<std::size_t>(per_block));
    for (long long i = 0; i < per_block; ++i)
        base_points[static_cast<std::size_t>(i)] = {
            radical_inverse(static_cast<std::uint64_t>(i) + 1, 2),
            radical_inverse(static_cast<std::uint64_t>(i) + 1, 3)};

    const double m1 = static_cast<double>(m.x), m2 = static_cast<double>(m.y);
    const double n1 = static_cast<double>(n.x), n2 = static_cast<double>(n.y);
    std::vector<double> block_means(blocks);
    for (int b = 0; b < blocks; ++b) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(b)));
        const double s1 = rng.u01(), s2 = rng.u01();
        long long hits = 0;
        for (const Vec2 q : base_points) {
            const double u1 = frac(q.x + s1), u2 = frac(q.y + s2);
            if (frac(z + u1 * m1 + u2 * m2) < eps && frac(z + u1 * n1 + u2 * n2) < eps) ++hits;
        }
        block_means[static_cast<std::size_t>(b)] =
            static_cast<double>(hits) / static_cast<double>(per_block);
    }

    double mean = 0;
    for (double v : block_means) mean += v;
    mean /= blocks;
    double var = 0;
    for (double v : block_means) var += (v - mean) * (v - mean);
    var /= (blocks - 1);
    return {mean, std::sqrt(var / blocks), per_block * blocks};
}

}  // namespace heislat
