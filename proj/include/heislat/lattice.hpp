#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "heislat/heis.hpp"
#include "heislat/linalg.hpp"
#include "heislat/rng.hpp"

namespace heislat {

/// Unimodular planar lattice; columns of `basis` are the basis vectors.
struct Lattice2 {
    Mat2 basis;

    Lattice2() = default;
    explicit Lattice2(const Mat2& b) : basis(b) {
        if (std::abs(det(b) - 1.0) > kUnimodularTol)
            throw std::invalid_argument("Lattice2: det(basis) must be 1");
    }
};

/// Upper-half-plane coordinates plus rotation:
/// basis = R(theta) * [[1/sqrt(y), x/sqrt(y)], [0, sqrt(y)]], det = 1.
inline Lattice2 lattice_from_coords(double x, double y, double theta) {
    if (!(y > 0)) throw std::domain_error("lattice_from_coords: y must be positive");
    const double sq = std::sqrt(y);
    const Mat2 shape{1.0 / sq, x / sq, 0.0, sq};
    return Lattice2(Mat2::rotation(theta) * shape);
}

/// Heisenberg lattice: image of Z^3 under the automorphism (basis, offset).
/// The offset is stored reduced, offset = basis * (u1, u2) with u in [0,1)^2.
struct HeisLattice {
    Lattice2 base;
    Vec2 offset;
};

/// Fiber coordinates u with offset = basis * u.
inline Vec2 fiber_coords(const HeisLattice& lat) {
    const Mat2& b = lat.base.basis;
    const double d = det(b);
    const Mat2 inv{b.a22 / d, -b.a12 / d, -b.a21 / d, b.a11 / d};
    return inv * lat.offset;
}

/// Canonical fiber representative: u reduced mod 1. Idempotent; the lattice
/// point set is unchanged.
inline HeisLattice reduce_offset(const HeisLattice& lat) {
    const Vec2 u = fiber_coords(lat);
    const Vec2 ur{frac(u.x), frac(u.y)};
    return {lat.base, lat.base.basis * ur};
}

inline HeisLattice make_heis_lattice(const Lattice2& base, Vec2 offset) {
    return reduce_offset(HeisLattice{base, offset});
}

/// The lattice point indexed by p: flat part g* m, height k - v^T g* m.
inline HPoint lattice_points_3d(const HeisLattice& lat, HIntPoint p) {
    const Mat2 gs = g_star(lat.base.basis);
    const Vec2 flat = gs * Vec2{static_cast<double>(p.m1), static_cast<double>(p.m2)};
    return {flat.x, flat.y, static_cast<double>(p.k) - dot(lat.offset, flat)};
}

/// Haar sampler over the lattice spaces. Rejection from the hyperbolic strip
/// {|x| <= 1/2, y >= sqrt(3)/2} onto the fundamental domain {x^2 + y^2 >= 1},
/// with density 1/y^2 in y and a uniform rotation in [0, pi). Acceptance
/// rate is pi*sqrt(3)/6 ~ 0.9069.
struct HaarSampler {
    Rng rng;
    std::uint64_t master_seed = 0;
    std::uint64_t proposals = 0;
    std::uint64_t accepts = 0;

    explicit HaarSampler(std::uint64_t seed) : rng(seed), master_seed(seed) {}
};

inline Lattice2 sample_euclidean(Rng& rng) {
    for (;;) {
        const double x = rng.uniform(-0.5, 0.5);
        const double y = (std::numbers::sqrt3 / 2.0) / (1.0 - rng.u01());
        if (x * x + y * y >= 1.0) {
            const double theta = std::numbers::pi * rng.u01();
            return lattice_from_coords(x, y, theta);
        }
    }
}

inline Lattice2 sample_euclidean(HaarSampler& s) {
    for (;;) {
        ++s.proposals;
        const double x = s.rng.uniform(-0.5, 0.5);
        const double y = (std::numbers::sqrt3 / 2.0) / (1.0 - s.rng.u01());
        if (x * x + y * y >= 1.0) {
            ++s.accepts;
            const double theta = std::numbers::pi * s.rng.u01();
            return lattice_from_coords(x, y, theta);
        }
    }
}

inline HeisLattice sample_heisenberg(Rng& rng) {
    const Lattice2 base = sample_euclidean(rng);
    const Vec2 u{rng.u01(), rng.u01()};
    return {base, base.basis * u};
}

inline HeisLattice sample_heisenberg(HaarSampler& s) {
    const Lattice2 base = sample_euclidean(s);
    const Vec2 u{s.rng.u01(), s.rng.u01()};
    return {base, base.basis * u};
}

constexpr double kZeta2 = 1.6449340668482264;  // pi^2 / 6

}  // namespace heislat
