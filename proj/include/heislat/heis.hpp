#pragma once

#include <cmath>
#include <stdexcept>

#include "heislat/linalg.hpp"

namespace heislat {

/// Point of the real Heisenberg group: R^3 with the twisted addition
/// (r,s,t) + (r',s',t') = (r+r', s+s', t+t'+rs'-sr').
struct HPoint {
    double r = 0.0;
    double s = 0.0;
    double t = 0.0;

    bool operator==(const HPoint&) const = default;
};

/// Integer point (m1, m2, k); exact 64-bit arithmetic. Keep |coords| < 2^30
/// so the symplectic products stay exact.
struct HIntPoint {
    long long m1 = 0;
    long long m2 = 0;
    long long k = 0;

    bool operator==(const HIntPoint&) const = default;
};

inline HPoint h_add(HPoint p, HPoint q) {
    return {p.r + q.r, p.s + q.s, p.t + q.t + p.r * q.s - p.s * q.r};
}

inline HIntPoint h_add(HIntPoint p, HIntPoint q) {
    return {p.m1 + q.m1, p.m2 + q.m2, p.k + q.k + p.m1 * q.m2 - p.m2 * q.m1};
}

inline HPoint h_neg(HPoint p) { return {-p.r, -p.s, -p.t}; }
inline HIntPoint h_neg(HIntPoint p) { return {-p.m1, -p.m2, -p.k}; }

inline bool is_primitive(HIntPoint p) { return gcd_ll(p.m1, p.m2) == 1; }

/// Inverse transpose of g; the flat part of every automorphism acts through
/// this. For det = 1 it is [[d,-c],[-b,a]].
inline Mat2 g_star(const Mat2& g) { return inverse_transpose(g); }

/// Volume-preserving automorphism (g, v) in SL(2,R) x| R^2.
struct AutElement {
    Mat2 g;
    Vec2 v;

    AutElement() = default;
    AutElement(const Mat2& g_, Vec2 v_) : g(g_), v(v_) {
        if (std::abs(det(g) - 1.0) > kUnimodularTol)
            throw std::invalid_argument("AutElement: det(g) must be 1");
    }

    static AutElement identity() { return {}; }
};

/// (g,v) . (r,s,t) = (g* (r,s), t - v^T g* (r,s)).
inline HPoint aut_act(const AutElement& a, HPoint p) {
    const Mat2 gs = g_star(a.g);
    const Vec2 flat = gs * Vec2{p.r, p.s};
    return {flat.x, flat.y, p.t - dot(a.v, flat)};
}

/// Composition law: (g_a, v_a)(g_b, v_b) = (g_a g_b, g_a v_b + v_a).
inline AutElement aut_compose(const AutElement& a, const AutElement& b) {
    return {a.g * b.g, a.g * b.v + a.v};
}

/// Integer automorphism (gamma, v) with gamma in SL(2,Z), v in Z^2;
/// exact action on integer points.
struct AutElementZ {
    Mat2i g;
    Vec2i v;

    AutElementZ() = default;
    AutElementZ(const Mat2i& g_, Vec2i v_) : g(g_), v(v_) {
        if (det(g) != 1) throw std::invalid_argument("AutElementZ: det(g) must be 1");
    }
};

inline HIntPoint aut_act(const AutElementZ& a, HIntPoint p) {
    const Mat2i gs = inverse_transpose(a.g);
    const Vec2i flat = gs * Vec2i{p.m1, p.m2};
    return {flat.x, flat.y, p.k - (a.v.x * flat.x + a.v.y * flat.y)};
}

/// The 3x3 matrix form [[g, v],[0,0,1]]; its determinant equals det(g).
inline double aut_det3(const AutElement& a) { return det(a.g); }

}  // namespace heislat
