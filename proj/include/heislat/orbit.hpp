#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <vector>

#include "heislat/linalg.hpp"
#include "heislat/rng.hpp"

namespace heislat {

/// Pair of primitive integer vectors.
struct PrimPair {
    Vec2i m;
    Vec2i n;

    PrimPair(Vec2i m_, Vec2i n_) : m(m_), n(n_) {
        if (gcd_ll(m.x, m.y) != 1 || gcd_ll(n.x, n.y) != 1)
            throw std::domain_error("PrimPair: vectors must be primitive");
    }

    bool operator==(const PrimPair&) const = default;
    auto operator<=>(const PrimPair&) const = default;
};

inline long long det_pair(const PrimPair& p) { return cross(p.m, p.n); }

inline PrimPair apply(const Mat2i& gamma, const PrimPair& p) {
    return {gamma * p.m, gamma * p.n};
}

/// SL(2,Z) orbit of a pair under the diagonal action, keyed by the canonical
/// representative. For |D| > 1 the representative is ((1,0), (k, D)) with
/// k in [0, |D|); for D = +-1 it is ((1,0), (0, D)); for D = 0 the pair is
/// (m, +-m) and the representative is ((1,0), (sign, 0)).
struct OrbitClass {
    long long D = 0;
    PrimPair rep;
    int sign_tag = 0;  // +-1 when D = 0, else 0

    bool operator==(const OrbitClass&) const = default;
    auto operator<=>(const OrbitClass&) const = default;
};

struct CanonicalResult {
    OrbitClass cls;
    Mat2i gamma;  // witness: apply(gamma, input) == cls.rep
};

inline const Mat2i kGenS{0, -1, 1, 0};
inline const Mat2i kGenT{1, 1, 0, 1};
inline const Mat2i kGenSInv{0, 1, -1, 0};
inline const Mat2i kGenTInv{1, -1, 0, 1};

inline Mat2i unipotent_power(long long j) { return {1, j, 0, 1}; }

inline CanonicalResult canonicalize_with_witness(const PrimPair& p) {
    // gamma0 sends m to (1, 0) via the extended gcd.
    const ExtGcd e = ext_gcd(p.m.x, p.m.y);
    const Mat2i gamma0{e.x, e.y, -p.m.y, p.m.x};  // det = x*m1 + y*m2 = 1
    const Vec2i n1 = gamma0 * p.n;
    const long long d = n1.y;  // equals det_pair(p)

    if (d == 0) {
        // primitivity forces n = +-m, so n1 = (+-1, 0)
        const int sign = n1.x > 0 ? 1 : -1;
        return {{0, PrimPair({1, 0}, {sign, 0}), sign}, gamma0};
    }
    // The stabilizer of (1,0) shifts n1.x by multiples of d.
    const long long ad = d < 0 ? -d : d;
    const long long k = mod_floor(n1.x, ad);
    const long long j = (k - n1.x) / d;
    const Mat2i gamma = unipotent_power(j) * gamma0;
    return {{d, PrimPair({1, 0}, {k, d}), 0}, gamma};
}

inline OrbitClass canonicalize(const PrimPair& p) { return canonicalize_with_witness(p).cls; }

inline bool same_orbit(const PrimPair& p, const PrimPair& q) {
    return canonicalize(p) == canonicalize(q);
}

/// Random word of the given length in the generators S, T and inverses.
inline Mat2i random_sl2z(Rng& rng, int word_length) {
    Mat2i g = Mat2i::identity();
    for (int i = 0; i < word_length; ++i) {
        switch (rng.below(4)) {
            case 0: g = g * kGenS; break;
            case 1: g = g * kGenSInv; break;
            case 2: g = g * kGenT; break;
            default: g = g * kGenTInv; break;
        }
    }
    return g;
}

struct OrbitCount {
    long long D = 0;
    int count = 0;
    std::vector<long long> residues;  // k values observed (|D| > 1 only)
};

namespace detail {

/// Generator-closure spot check: BFS from the representative under S, T and
/// inverses, keeping entries within the cap, and confirm every reached pair
/// canonicalizes to the same class.
inline void verify_orbit_closure(const OrbitClass& cls, long long entry_cap,
                                 std::size_t node_cap) {
    const auto within = [entry_cap](const PrimPair& p) {
        const auto ok = [entry_cap](long long v) { return v >= -entry_cap && v <= entry_cap; };
        return ok(p.m.x) && ok(p.m.y) && ok(p.n.x) && ok(p.n.y);
    };
    std::set<PrimPair> seen{cls.rep};
    std::deque<PrimPair> queue{cls.rep};
    while (!queue.empty() && seen.size() < node_cap) {
        const PrimPair cur = queue.front();
        queue.pop_front();
        for (const Mat2i* g : {&kGenS, &kGenSInv, &kGenT, &kGenTInv}) {
            const PrimPair next = apply(*g, cur);
            if (!within(next) || seen.count(next)) continue;
            if (canonicalize(next) != cls)
                throw std::logic_error("orbit closure: canonical form not invariant");
            seen.insert(next);
            queue.push_back(next);
        }
    }
}

}  // namespace detail

/// Visits every primitive pair with entries in [-height, height] and the
/// given determinant, exactly once.
template <class Fn>
void for_each_det_pair(long long D, long long height, Fn&& fn) {
    for (long long mx = -height; mx <= height; ++mx) {
        for (long long my = -height; my <= height; ++my) {
            if (gcd_ll(mx, my) != 1) continue;
            const Vec2i m{mx, my};
            // solutions of cross(m, n) = D: n = n0 + t*m with n0 from ext gcd
            const ExtGcd e = ext_gcd(mx, my);
            const Vec2i n0{-e.y * D, e.x * D};
            // bound t so n stays inside the box; |n0| <= |D| * height / 2 and
            // the relevant |m| component is >= 1, so this window always covers
            long long t_lo = -(std::abs(D) + 2) * height, t_hi = -t_lo;
            const auto clamp_component = [&](long long base, long long dir) {
                if (dir == 0) return;
                const long long lo = (-height - base), hi = (height - base);
                long long a = lo / dir, b = hi / dir;
                // widen to be safe against truncation, filtering below
                if (a > b) std::swap(a, b);
                t_lo = std::max(t_lo, a - 2);
                t_hi = std::min(t_hi, b + 2);
            };
            clamp_component(n0.x, m.x);
            clamp_component(n0.y, m.y);
            for (long long t = t_lo; t <= t_hi; ++t) {
                const Vec2i n{n0.x + t * m.x, n0.y + t * m.y};
                if (n.x < -height || n.x > height || n.y < -height || n.y > height) continue;
                if (gcd_ll(n.x, n.y) != 1) continue;
                fn(PrimPair(m, n));
            }
        }
    }
}

/// Enumerates all primitive pairs with entries in [-height, height] and the
/// given determinant, counts distinct canonical forms, and cross-checks the
/// classes by closing small orbits under the generators.
inline OrbitCount orbit_count_bruteforce(long long D, long long height) {
    if (height < 50) throw std::invalid_argument("orbit_count_bruteforce: height must be >= 50");
    if (D < -12 || D > 12) throw std::invalid_argument("orbit_count_bruteforce: |D| must be <= 12");

    std::set<OrbitClass> classes;
    for_each_det_pair(D, height, [&](const PrimPair& pair) {
        const CanonicalResult c = canonicalize_with_witness(pair);
        if (apply(c.gamma, pair) != c.cls.rep)
            throw std::logic_error("orbit_count: canonicalization witness failed");
        classes.insert(c.cls);
    });
    for (const OrbitClass& cls : classes) {
        if (canonicalize(cls.rep) != cls)
            throw std::logic_error("orbit_count: representative not idempotent");
        detail::verify_orbit_closure(cls, /*entry_cap=*/std::max<long long>(24, height / 4),
                                     /*node_cap=*/20000);
    }

    OrbitCount out;
    out.D = D;
    out.count = static_cast<int>(classes.size());
    for (const OrbitClass& cls : classes)
        if (cls.sign_tag == 0 && (D > 1 || D < -1)) out.residues.push_back(cls.rep.n.x);
    std::sort(out.residues.begin(), out.residues.end());
    return out;
}

}  // namespace heislat
