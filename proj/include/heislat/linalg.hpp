#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace heislat {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double c) const { return {c * x, c * y}; }
    bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// 2x2 real matrix, row-major.
struct Mat2 {
    double a11 = 1.0, a12 = 0.0;
    double a21 = 0.0, a22 = 1.0;

    static Mat2 identity() { return {}; }
    static Mat2 rotation(double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        return {c, -s, s, c};
    }

    Vec2 operator*(Vec2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    bool operator==(const Mat2&) const = default;
};

inline double det(const Mat2& m) { return m.a11 * m.a22 - m.a12 * m.a21; }
inline Mat2 transpose(const Mat2& m) { return {m.a11, m.a21, m.a12, m.a22}; }

constexpr double kUnimodularTol = 1e-9;

/// Inverse transpose. Requires det within kUnimodularTol of 1.
inline Mat2 inverse_transpose(const Mat2& m) {
    const double d = det(m);
    if (std::abs(d - 1.0) > kUnimodularTol)
        throw std::invalid_argument("inverse_transpose: matrix is not unimodular");
    return {m.a22 / d, -m.a21 / d, -m.a12 / d, m.a11 / d};
}

// ---------------------------------------------------------------------------
// Exact integer lane (64-bit).

struct Vec2i {
    long long x = 0;
    long long y = 0;

    Vec2i operator+(Vec2i o) const { return {x + o.x, y + o.y}; }
    Vec2i operator-() const { return {-x, -y}; }
    bool operator==(const Vec2i&) const = default;
    auto operator<=>(const Vec2i&) const = default;
};

inline long long cross(Vec2i a, Vec2i b) { return a.x * b.y - a.y * b.x; }

struct Mat2i {
    long long a11 = 1, a12 = 0;
    long long a21 = 0, a22 = 1;

    static Mat2i identity() { return {}; }

    Vec2i operator*(Vec2i v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
    Mat2i operator*(const Mat2i& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    bool operator==(const Mat2i&) const = default;
};

inline long long det(const Mat2i& m) { return m.a11 * m.a22 - m.a12 * m.a21; }

/// Inverse transpose of an SL(2,Z) matrix (exact; requires det = 1).
inline Mat2i inverse_transpose(const Mat2i& m) {
    if (det(m) != 1) throw std::invalid_argument("inverse_transpose: det != 1");
    return {m.a22, -m.a21, -m.a12, m.a11};
}

inline long long gcd_ll(long long a, long long b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

struct ExtGcd {
    long long g;  // gcd(a, b) >= 0
    long long x;  // a*x + b*y = g
    long long y;
};

inline ExtGcd ext_gcd(long long a, long long b) {
    long long old_r = a, r = b;
    long long old_x = 1, x = 0;
    long long old_y = 0, y = 1;
    while (r != 0) {
        const long long q = old_r / r;
        old_r -= q * r;  std::swap(old_r, r);
        old_x -= q * x;  std::swap(old_x, x);
        old_y -= q * y;  std::swap(old_y, y);
    }
    if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
    return {old_r, old_x, old_y};
}

/// Nonnegative residue of a modulo m (m > 0).
inline long long mod_floor(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

/// Fractional part into [0, 1).
inline double frac(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;  // guards against rounding at the seam
    return f;
}

}  // namespace heislat
