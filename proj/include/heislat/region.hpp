#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "heislat/linalg.hpp"
#include "heislat/rng.hpp"

namespace heislat {

struct Region2;

/// Axis-aligned rectangle, half-open: [xmin, xmax) x [ymin, ymax).
struct RectRegion {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
};

/// Closed disk |p - center| <= radius.
struct DiskRegion {
    Vec2 center;
    double radius = 0;
};

/// Annulus r_inner < |p - center| <= r_outer. r_inner = 0 gives a punctured disk.
struct AnnulusRegion {
    Vec2 center;
    double r_inner = 0;
    double r_outer = 0;
};

/// Disjoint union; disjointness is caller-asserted and spot-checked by sampling.
struct UnionRegion {
    std::vector<Region2> parts;
};

struct Region2 {
    std::variant<RectRegion, DiskRegion, AnnulusRegion, UnionRegion> node;
};

inline Region2 make_rect(double xmin, double xmax, double ymin, double ymax) {
    if (!(xmin < xmax && ymin < ymax))
        throw std::invalid_argument("rectangle: empty or inverted extents");
    return {RectRegion{xmin, xmax, ymin, ymax}};
}

inline Region2 make_disk(Vec2 center, double radius) {
    if (!(radius > 0)) throw std::invalid_argument("disk: radius must be positive");
    return {DiskRegion{center, radius}};
}

inline Region2 make_annulus(Vec2 center, double r_inner, double r_outer) {
    if (!(r_inner >= 0 && r_outer > r_inner))
        throw std::invalid_argument("annulus: need 0 <= r_inner < r_outer");
    return {AnnulusRegion{center, r_inner, r_outer}};
}

inline double measure2(const Region2& a) {
    using std::numbers::pi;
    return std::visit(
        [](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, RectRegion>) {
                return (n.xmax - n.xmin) * (n.ymax - n.ymin);
            } else if constexpr (std::is_same_v<T, DiskRegion>) {
                return pi * n.radius * n.radius;
            } else if constexpr (std::is_same_v<T, AnnulusRegion>) {
                return pi * (n.r_outer * n.r_outer - n.r_inner * n.r_inner);
            } else {
                double s = 0;
                for (const auto& p : n.parts) s += measure2(p);
                return s;
            }
        },
        a.node);
}

inline bool contains2(const Region2& a, Vec2 p) {
    return std::visit(
        [p](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, RectRegion>) {
                return p.x >= n.xmin && p.x < n.xmax && p.y >= n.ymin && p.y < n.ymax;
            } else if constexpr (std::is_same_v<T, DiskRegion>) {
                const Vec2 d = p - n.center;
                return dot(d, d) <= n.radius * n.radius;
            } else if constexpr (std::is_same_v<T, AnnulusRegion>) {
                const Vec2 d = p - n.center;
                const double q = dot(d, d);
                return q > n.r_inner * n.r_inner && q <= n.r_outer * n.r_outer;
            } else {
                for (const auto& part : n.parts)
                    if (contains2(part, p)) return true;
                return false;
            }
        },
        a.node);
}

/// Minimal axis-aligned bounding box, returned as a RectRegion (closed box;
/// only used to drive enumeration and sampling).
inline RectRegion bounding_box(const Region2& a) {
    return std::visit(
        [](const auto& n) -> RectRegion {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, RectRegion>) {
                return n;
            } else if constexpr (std::is_same_v<T, DiskRegion>) {
                return {n.center.x - n.radius, n.center.x + n.radius,
                        n.center.y - n.radius, n.center.y + n.radius};
            } else if constexpr (std::is_same_v<T, AnnulusRegion>) {
                return {n.center.x - n.r_outer, n.center.x + n.r_outer,
                        n.center.y - n.r_outer, n.center.y + n.r_outer};
            } else {
                RectRegion box{std::numeric_limits<double>::infinity(),
                               -std::numeric_limits<double>::infinity(),
                               std::numeric_limits<double>::infinity(),
                               -std::numeric_limits<double>::infinity()};
                for (const auto& part : n.parts) {
                    const RectRegion b = bounding_box(part);
                    box.xmin = std::min(box.xmin, b.xmin);
                    box.xmax = std::max(box.xmax, b.xmax);
                    box.ymin = std::min(box.ymin, b.ymin);
                    box.ymax = std::max(box.ymax, b.ymax);
                }
                if (!(box.xmin < box.xmax)) throw std::invalid_argument("bounding_box: empty union");
                return box;
            }
        },
        a.node);
}

/// Uniform point in the region by rejection from its bounding box.
inline Vec2 sample_point(const Region2& a, Rng& rng) {
    const RectRegion box = bounding_box(a);
    for (int tries = 0; tries < 1 << 20; ++tries) {
        const Vec2 p{rng.uniform(box.xmin, box.xmax), rng.uniform(box.ymin, box.ymax)};
        if (contains2(a, p)) return p;
    }
    throw std::runtime_error("sample_point: rejection failed (degenerate region?)");
}

/// Disjoint union with a randomized spot check: sample points of each part,
/// no other part may contain them.
inline Region2 make_union(std::vector<Region2> parts, bool spot_check = true,
                          int check_points = 1000) {
    if (parts.empty()) throw std::invalid_argument("union: no parts");
    if (spot_check && parts.size() > 1) {
        Rng rng(0x7e6f0b5du);
        const int per_part = std::max<int>(1, check_points / static_cast<int>(parts.size()));
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (int j = 0; j < per_part; ++j) {
                const Vec2 p = sample_point(parts[i], rng);
                for (std::size_t l = 0; l < parts.size(); ++l) {
                    if (l != i && contains2(parts[l], p))
                        throw std::invalid_argument("union: parts are not disjoint");
                }
            }
        }
    }
    Region2 r;
    r.node = UnionRegion{std::move(parts)};
    return r;
}

// ---------------------------------------------------------------------------
// Plates and cylinder stacks.

/// Epsilon-plate: base x [z, z+eps) with z reduced into [0,1) and 0 < eps < 1.
struct Plate {
    Region2 base;
    double z = 0;
    double eps = 0;

    Plate(Region2 base_, double z_, double eps_)
        : base(std::move(base_)), z(frac(z_)), eps(eps_) {
        if (!(eps > 0 && eps < 1)) throw std::invalid_argument("plate: need 0 < eps < 1");
    }
};

/// Half-open height interval [lo, hi).
struct Interval {
    double lo = 0;
    double hi = 0;

    double length() const { return hi - lo; }
};

inline double overlap(Interval a, Interval b) {
    return std::max(0.0, std::min(a.hi, b.hi) - std::max(a.lo, b.lo));
}

struct Cylinder {
    Region2 piece;
    Interval span;
};

/// Finite union of cylinders piece x [lo, hi). Point-count additivity needs
/// the pieces pairwise disjoint in the plane (what the builders guarantee)
/// or the intervals pairwise disjoint.
struct CylinderStack {
    std::vector<Cylinder> cylinders;
};

inline double measure3(const Plate& p) { return measure2(p.base) * p.eps; }

inline double measure3(const CylinderStack& s) {
    double total = 0;
    for (const auto& c : s.cylinders) {
        if (!(c.span.hi > c.span.lo)) throw std::invalid_argument("stack: empty interval");
        total += measure2(c.piece) * c.span.length();
    }
    return total;
}

/// Flat projection of a stack as a region (disjointness already guaranteed
/// by the builders, so the union spot check is skipped).
inline Region2 flat_projection(const CylinderStack& s) {
    if (s.cylinders.empty()) throw std::invalid_argument("flat_projection: empty stack");
    if (s.cylinders.size() == 1) return s.cylinders.front().piece;
    std::vector<Region2> parts;
    parts.reserve(s.cylinders.size());
    for (const auto& c : s.cylinders) parts.push_back(c.piece);
    return make_union(std::move(parts), /*spot_check=*/false);
}

// ---------------------------------------------------------------------------
// JSON wire format.
//   {"type":"disk","center":[0,0],"radius":2.5}
//   {"type":"annulus","center":[0,0],"r_inner":1,"r_outer":2}
//   {"type":"rectangle","xmin":0,"xmax":4,"ymin":0,"ymax":3}
//   {"type":"union","parts":[...]}
// A plate spec adds "z" and "eps" to the region object.

inline Region2 region_from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "disk") {
        const auto c = j.at("center");
        return make_disk({c.at(0).get<double>(), c.at(1).get<double>()},
                         j.at("radius").get<double>());
    }
    if (type == "annulus") {
        const auto c = j.at("center");
        return make_annulus({c.at(0).get<double>(), c.at(1).get<double>()},
                            j.at("r_inner").get<double>(), j.at("r_outer").get<double>());
    }
    if (type == "rectangle") {
        return make_rect(j.at("xmin").get<double>(), j.at("xmax").get<double>(),
                         j.at("ymin").get<double>(), j.at("ymax").get<double>());
    }
    if (type == "union") {
        std::vector<Region2> parts;
        for (const auto& p : j.at("parts")) parts.push_back(region_from_json(p));
        return make_union(std::move(parts));
    }
    throw std::invalid_argument("region: unknown type '" + type + "'");
}

inline nlohmann::json region_to_json(const Region2& a) {
    return std::visit(
        [](const auto& n) -> nlohmann::json {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, RectRegion>) {
                return {{"type", "rectangle"}, {"xmin", n.xmin}, {"xmax", n.xmax},
                        {"ymin", n.ymin},      {"ymax", n.ymax}};
            } else if constexpr (std::is_same_v<T, DiskRegion>) {
                return {{"type", "disk"}, {"center", {n.center.x, n.center.y}},
                        {"radius", n.radius}};
            } else if constexpr (std::is_same_v<T, AnnulusRegion>) {
                return {{"type", "annulus"}, {"center", {n.center.x, n.center.y}},
                        {"r_inner", n.r_inner}, {"r_outer", n.r_outer}};
            } else {
                nlohmann::json parts = nlohmann::json::array();
                for (const auto& p : n.parts) parts.push_back(region_to_json(p));
                return {{"type", "union"}, {"parts", parts}};
            }
        },
        a.node);
}

inline Plate plate_from_json(const nlohmann::json& j) {
    const nlohmann::json& region = j.contains("region") ? j.at("region") : j;
    return Plate(region_from_json(region), j.at("z").get<double>(), j.at("eps").get<double>());
}

}  // namespace heislat
