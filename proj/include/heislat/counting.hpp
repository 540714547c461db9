#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "heislat/lattice.hpp"
#include "heislat/region.hpp"

namespace heislat {

/// Candidate enumeration cap; degenerate near-singular bases are rejected
/// instead of looping for hours.
constexpr long long kEnumerationBudget = 1'000'000'000;

struct BudgetError : std::runtime_error {
    explicit BudgetError(long long candidates)
        : std::runtime_error("enumeration budget exceeded: " + std::to_string(candidates) +
                             " candidate points > " + std::to_string(kEnumerationBudget)) {}
};

/// Integer index box covering basis^T * box, the preimage of the flat
/// bounding box under m -> g* m.
struct IndexBox {
    long long x0 = 0, x1 = -1;
    long long y0 = 0, y1 = -1;

    long long count() const {
        if (x1 < x0 || y1 < y0) return 0;
        return (x1 - x0 + 1) * (y1 - y0 + 1);
    }
};

inline IndexBox index_box(const Mat2& basis, const RectRegion& box) {
    const Mat2 bt = transpose(basis);  // inverse of g*
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const double px : {box.xmin, box.xmax}) {
        for (const double py : {box.ymin, box.ymax}) {
            const Vec2 m = bt * Vec2{px, py};
            if (first) {
                xmin = xmax = m.x;
                ymin = ymax = m.y;
                first = false;
            } else {
                xmin = std::min(xmin, m.x);
                xmax = std::max(xmax, m.x);
                ymin = std::min(ymin, m.y);
                ymax = std::max(ymax, m.y);
            }
        }
    }
    IndexBox ib{static_cast<long long>(std::floor(xmin)), static_cast<long long>(std::ceil(xmax)),
                static_cast<long long>(std::floor(ymin)), static_cast<long long>(std::ceil(ymax))};
    if (ib.count() > kEnumerationBudget) throw BudgetError(ib.count());
    return ib;
}

/// Exactly the primitive m in Z^2 with g* m in A, where g* is the inverse
/// transpose of the basis.
inline std::vector<Vec2i> enumerate_primitive_in_region(const Lattice2& g, const Region2& a) {
    const Mat2 gs = g_star(g.basis);
    const IndexBox ib = index_box(g.basis, bounding_box(a));
    std::vector<Vec2i> out;
    for (long long mx = ib.x0; mx <= ib.x1; ++mx) {
        for (long long my = ib.y0; my <= ib.y1; ++my) {
            if (gcd_ll(mx, my) != 1) continue;
            const Vec2 p = gs * Vec2{static_cast<double>(mx), static_cast<double>(my)};
            if (contains2(a, p)) out.push_back({mx, my});
        }
    }
    return out;
}

/// Theta transform of chi_A: number of primitive lattice points in A.
inline long long theta_euclidean(const Lattice2& g, const Region2& a) {
    return static_cast<long long>(enumerate_primitive_in_region(g, a).size());
}

/// True iff some integer k satisfies k - q in [z, z + eps), i.e. the fiber
/// line over a flat point with phase q meets the level window.
inline bool level_hit(double q, double z, double eps) {
    const double w = z + q;
    return std::ceil(w) - w < eps;
}

/// True iff some integer k satisfies k - q in [lo, hi).
inline bool interval_hit(double q, double lo, double hi) {
    if (hi - lo >= 1.0) return true;
    const double w = lo + q;
    return std::ceil(w) - w < hi - lo;
}

/// Nil-theta transform over a plate: primitive flat hits whose fiber line
/// meets [z, z+eps). Matches the direct 3d enumeration exactly.
inline long long nil_theta(const HeisLattice& lat, const Plate& plate) {
    const Mat2 gs = g_star(lat.base.basis);
    long long count = 0;
    for (const Vec2i m : enumerate_primitive_in_region(lat.base, plate.base)) {
        const Vec2 p = gs * Vec2{static_cast<double>(m.x), static_cast<double>(m.y)};
        if (level_hit(dot(lat.offset, p), plate.z, plate.eps)) ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------
// Independent oracle: literal 3-dimensional enumeration.

struct KRange {
    long long lo = 0;
    long long hi = -1;
};

namespace detail {

inline RectRegion flat_box(const Plate& p) { return bounding_box(p.base); }

inline RectRegion flat_box(const CylinderStack& s) {
    return bounding_box(flat_projection(s));
}

inline Interval height_hull(const Plate& p) { return {p.z, p.z + p.eps}; }

inline Interval height_hull(const CylinderStack& s) {
    Interval h{std::numeric_limits<double>::infinity(),
               -std::numeric_limits<double>::infinity()};
    for (const auto& c : s.cylinders) {
        h.lo = std::min(h.lo, c.span.lo);
        h.hi = std::max(h.hi, c.span.hi);
    }
    return h;
}

inline bool in_set(const Plate& p, Vec2 flat, double t) {
    return contains2(p.base, flat) && t >= p.z && t < p.z + p.eps;
}

inline bool in_set(const CylinderStack& s, Vec2 flat, double t) {
    for (const auto& c : s.cylinders)
        if (t >= c.span.lo && t < c.span.hi && contains2(c.piece, flat)) return true;
    return false;
}

}  // namespace detail

/// Conservative k range sufficient for nil_theta_direct, from the offset
/// magnitude and the flat bounding box.
template <class Set>
KRange required_k_range(const HeisLattice& lat, const Set& s) {
    const RectRegion box = detail::flat_box(s);
    const double rmax = std::max({norm({box.xmin, box.ymin}), norm({box.xmin, box.ymax}),
                                  norm({box.xmax, box.ymin}), norm({box.xmax, box.ymax})});
    const double q_bound = norm(lat.offset) * rmax;
    const Interval h = detail::height_hull(s);
    return {static_cast<long long>(std::floor(h.lo - q_bound)) - 1,
            static_cast<long long>(std::ceil(h.hi + q_bound)) + 1};
}

/// Direct enumeration over integer triples: counts primitive p with
/// lattice_points_3d(lat, p) in the set. The given k range must cover every
/// height the set can meet for this lattice.
template <class Set>
long long nil_theta_direct(const HeisLattice& lat, const Set& s, KRange k_range) {
    const KRange need = required_k_range(lat, s);
    if (k_range.lo > need.lo || k_range.hi < need.hi)
        throw std::invalid_argument("nil_theta_direct: k_range does not cover the set");

    const IndexBox ib = index_box(lat.base.basis, detail::flat_box(s));
    const long long k_count = k_range.hi - k_range.lo + 1;
    if (ib.count() * k_count > kEnumerationBudget) throw BudgetError(ib.count() * k_count);

    long long count = 0;
    for (long long mx = ib.x0; mx <= ib.x1; ++mx) {
        for (long long my = ib.y0; my <= ib.y1; ++my) {
            if (gcd_ll(mx, my) != 1) continue;
            for (long long k = k_range.lo; k <= k_range.hi; ++k) {
                const HPoint pt = lattice_points_3d(lat, {mx, my, k});
                if (detail::in_set(s, {pt.r, pt.s}, pt.t)) ++count;
            }
        }
    }
    return count;
}

/// Splits [lo, hi) into slabs of height < 1 aligned so each is a plate.
inline std::vector<std::pair<double, double>> split_into_slabs(Interval span) {
    std::vector<std::pair<double, double>> slabs;
    double t = span.lo;
    while (t < span.hi) {
        double next = std::min(span.hi, std::floor(t) + 1.0);
        if (next <= t) next = t + 1.0;        // t was integral
        if (next - t >= 1.0) next = t + 0.5;  // keep slab height < 1
        if (next > span.hi) next = span.hi;
        slabs.emplace_back(t, next);
        t = next;
    }
    return slabs;
}

/// Primitive count over a stack, slab by slab; equals nil_theta_direct.
inline long long theta_count_stack(const HeisLattice& lat, const CylinderStack& s) {
    long long total = 0;
    for (const auto& c : s.cylinders) {
        for (const auto& [lo, hi] : split_into_slabs(c.span)) {
            total += nil_theta(lat, Plate(c.piece, frac(lo), hi - lo));
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Full-lattice hit tests (no primitivity filter), used by the miss-probability
// experiments where the sets are whole-lattice events.

inline bool euclidean_lattice_meets(const Lattice2& g, const Region2& a) {
    if (contains2(a, {0.0, 0.0})) return true;  // 0 lies in every lattice
    const Mat2 gs = g_star(g.basis);
    const IndexBox ib = index_box(g.basis, bounding_box(a));
    for (long long mx = ib.x0; mx <= ib.x1; ++mx)
        for (long long my = ib.y0; my <= ib.y1; ++my) {
            if (mx == 0 && my == 0) continue;
            if (contains2(a, gs * Vec2{static_cast<double>(mx), static_cast<double>(my)}))
                return true;
        }
    return false;
}

inline bool heis_lattice_meets(const HeisLattice& lat, const CylinderStack& s) {
    const Mat2 gs = g_star(lat.base.basis);
    for (const auto& c : s.cylinders) {
        // central points (0,0,k)
        if (contains2(c.piece, {0.0, 0.0}) && interval_hit(0.0, c.span.lo, c.span.hi))
            return true;
        const IndexBox ib = index_box(lat.base.basis, bounding_box(c.piece));
        for (long long mx = ib.x0; mx <= ib.x1; ++mx)
            for (long long my = ib.y0; my <= ib.y1; ++my) {
                if (mx == 0 && my == 0) continue;
                const Vec2 p = gs * Vec2{static_cast<double>(mx), static_cast<double>(my)};
                if (!contains2(c.piece, p)) continue;
                if (interval_hit(dot(lat.offset, p), c.span.lo, c.span.hi)) return true;
            }
    }
    return false;
}

inline bool heis_lattice_meets(const HeisLattice& lat, const Plate& p) {
    CylinderStack s;
    s.cylinders.push_back({p.base, {p.z, p.z + p.eps}});
    return heis_lattice_meets(lat, s);
}

}  // namespace heislat
