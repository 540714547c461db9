#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "heislat/counting.hpp"
#include "heislat/orbit.hpp"

using namespace heislat;

namespace {

const Lattice2 kIdentity{Mat2::identity()};

/// Independent brute-force oracle: scans a fixed integer window and tests
/// membership of g* m directly, with no box mapping.
long long oracle_theta(const Lattice2& g, const Region2& a, long long window) {
    const Mat2 gs = g_star(g.basis);
    long long count = 0;
    for (long long x = -window; x <= window; ++x)
        for (long long y = -window; y <= window; ++y) {
            if (gcd_ll(x, y) != 1) continue;
            if (contains2(a, gs * Vec2{static_cast<double>(x), static_cast<double>(y)}))
                ++count;
        }
    return count;
}

Lattice2 random_lattice(Rng& rng) { return sample_euclidean(rng); }

Region2 random_region(Rng& rng) {
    const double area = rng.uniform(0.5, 50.0);
    const double cx = rng.uniform(-3, 3), cy = rng.uniform(-3, 3);
    switch (rng.below(4)) {
        case 0:
            return make_disk({cx, cy}, std::sqrt(area / std::numbers::pi));
        case 1: {
            const double rin = rng.uniform(0.2, 2.0);
            return make_annulus({cx, cy}, rin,
                                std::sqrt(rin * rin + area / std::numbers::pi));
        }
        case 2: {
            // two disjoint disks
            const double r1 = std::sqrt(area / (2 * std::numbers::pi));
            const double r2 = rng.uniform(0.3, r1);
            std::vector<Region2> parts;
            parts.push_back(make_disk({cx, cy}, r1));
            parts.push_back(make_disk({cx + r1 + r2 + rng.uniform(0.1, 2.0), cy}, r2));
            return make_union(std::move(parts));
        }
        default: {
            const double w = rng.uniform(0.5, 8.0);
            return make_rect(cx, cx + w, cy, cy + area / w);
        }
    }
}

}  // namespace

TEST_CASE("primitive enumeration against the frozen oracle values") {
    const auto disk_pts = enumerate_primitive_in_region(kIdentity, make_disk({0, 0}, 2.5));
    CHECK(disk_pts.size() == 16);
    CHECK(theta_euclidean(kIdentity, make_disk({0, 0}, 2.5)) == 16);
    CHECK(theta_euclidean(kIdentity, make_disk({0, 0}, 0.5)) == 0);
    CHECK(theta_euclidean(kIdentity, make_rect(-1.5, 1.5, -1.5, 1.5)) == 8);
}

TEST_CASE("enumeration agrees with the window oracle on random lattices") {
    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        const Lattice2 g = random_lattice(rng);
        const Region2 a = random_region(rng);
        const long long fast = theta_euclidean(g, a);
        // window covering the index box by construction
        const IndexBox ib = index_box(g.basis, bounding_box(a));
        const long long window =
            std::max({std::abs(ib.x0), std::abs(ib.x1), std::abs(ib.y0), std::abs(ib.y1)}) + 1;
        CHECK(fast == oracle_theta(g, a, window));
    }
}

TEST_CASE("rotation invariance for centered disks") {
    Rng rng(77);
    const Region2 disk = make_disk({0, 0}, 2.5);
    for (int i = 0; i < 50; ++i) {
        const double theta = rng.uniform(0, 3.141592653589793);
        const Lattice2 g{Mat2::rotation(theta)};
        CHECK(theta_euclidean(g, disk) == 16);
    }
}

TEST_CASE("SL(2,Z) invariance of the theta transform") {
    Rng rng(21);
    for (int i = 0; i < 100; ++i) {
        const Lattice2 g = random_lattice(rng);
        const Region2 a = random_region(rng);
        const Mat2i gamma = random_sl2z(rng, static_cast<int>(rng.below(10)) + 1);
        const Mat2 gamma_d{static_cast<double>(gamma.a11), static_cast<double>(gamma.a12),
                           static_cast<double>(gamma.a21), static_cast<double>(gamma.a22)};
        const Lattice2 gg{g.basis * gamma_d};
        CHECK(theta_euclidean(g, a) == theta_euclidean(gg, a));
    }
}

TEST_CASE("nil_theta frozen examples") {
    const HeisLattice id{kIdentity, {0, 0}};
    CHECK(nil_theta(id, Plate(make_disk({0, 0}, 2.5), 0.0, 0.5)) == 16);
    CHECK(nil_theta(id, Plate(make_disk({0, 0}, 2.5), 0.5, 0.5)) == 0);
    const HeisLattice shifted{kIdentity, {0.25, 0}};
    CHECK(nil_theta(shifted, Plate(make_disk({0, 0}, 2.5), 0.0, 0.3)) == 7);
}

TEST_CASE("direct oracle on the frozen examples") {
    const HeisLattice id{kIdentity, {0, 0}};
    const Plate p1(make_disk({0, 0}, 2.5), 0.0, 0.5);
    CHECK(nil_theta_direct(id, p1, required_k_range(id, p1)) == 16);
    const Plate p2(make_disk({0, 0}, 2.5), 0.5, 0.5);
    CHECK(nil_theta_direct(id, p2, required_k_range(id, p2)) == 0);
    const HeisLattice shifted{kIdentity, {0.25, 0}};
    const Plate p3(make_disk({0, 0}, 2.5), 0.0, 0.3);
    CHECK(nil_theta_direct(shifted, p3, required_k_range(shifted, p3)) == 7);

    CylinderStack one;
    one.cylinders.push_back({p1.base, {p1.z, p1.z + p1.eps}});
    CHECK(nil_theta_direct(id, one, required_k_range(id, one)) == 16);

    CHECK_THROWS_AS(nil_theta_direct(shifted, p3, KRange{0, 0}), std::invalid_argument);
}

TEST_CASE("oracle equivalence on random lattice-plate pairs") {
    Rng rng(2718);
    for (int i = 0; i < 150; ++i) {
        Rng trial(mix_seed(907, static_cast<std::uint64_t>(i)));
        const HeisLattice lat = sample_heisenberg(trial);
        const Plate plate(random_region(trial), trial.u01(), trial.uniform(0.05, 0.95));
        CHECK(nil_theta(lat, plate) == nil_theta_direct(lat, plate, required_k_range(lat, plate)));
    }
    (void)rng;
}

TEST_CASE("monotonicity over nested disks") {
    Rng rng(555);
    for (int i = 0; i < 200; ++i) {
        const HeisLattice lat = sample_heisenberg(rng);
        const double r_small = rng.uniform(0.5, 2.0);
        const double z = rng.u01(), eps = rng.uniform(0.05, 0.95);
        const long long small_count = nil_theta(lat, Plate(make_disk({0, 0}, r_small), z, eps));
        const long long big_count =
            nil_theta(lat, Plate(make_disk({0, 0}, r_small + rng.uniform(0, 2)), z, eps));
        CHECK(small_count <= big_count);
    }
}

TEST_CASE("stack counting") {
    const HeisLattice id{kIdentity, {0, 0}};
    CylinderStack empty;
    CHECK(theta_count_stack(id, empty) == 0);

    // two disjoint copies of the same plate at z = 0 and z = 0.5
    CylinderStack s;
    s.cylinders.push_back({make_disk({0, 0}, 2.5), {0.0, 0.5}});
    s.cylinders.push_back({make_disk({0, 0}, 2.5), {0.5, 1.0}});
    // pieces overlap in the plane but the intervals are disjoint
    CHECK(theta_count_stack(id, s) == 16);

    // single tall cylinder: every flat point contributes once per unit height
    CylinderStack tall;
    tall.cylinders.push_back({make_disk({0, 0}, 2.5), {0.0, 3.0}});
    CHECK(theta_count_stack(id, tall) == 3 * 16);
    CHECK(theta_count_stack(id, tall) == nil_theta_direct(id, tall, required_k_range(id, tall)));
}

TEST_CASE("stack counting matches the direct oracle on random stacks") {
    for (int i = 0; i < 60; ++i) {
        Rng trial(mix_seed(31, static_cast<std::uint64_t>(i)));
        const HeisLattice lat = sample_heisenberg(trial);
        CylinderStack s;
        double level = trial.uniform(-2, 0);
        for (int c = 0; c < 3; ++c) {
            const double len = trial.uniform(0.2, 2.5);
            s.cylinders.push_back(
                {make_disk({trial.uniform(-2, 2), trial.uniform(-2, 2)}, trial.uniform(0.5, 2.0)),
                 {level, level + len}});
            level += len + trial.uniform(0.0, 0.5);  // disjoint intervals
        }
        CHECK(theta_count_stack(lat, s) ==
              nil_theta_direct(lat, s, required_k_range(lat, s)));
    }
}

TEST_CASE("enumeration budget") {
    CHECK_THROWS_AS(theta_euclidean(kIdentity, make_disk({0, 0}, 40000.0)), BudgetError);
}

TEST_CASE("full-lattice hit tests") {
    // identity lattice meets any region containing an integer point
    CHECK(euclidean_lattice_meets(kIdentity, make_disk({3, 0}, 0.25)));
    CHECK_FALSE(euclidean_lattice_meets(kIdentity, make_disk({0.5, 0.5}, 0.25)));
    // origin is in every lattice
    CHECK(euclidean_lattice_meets(kIdentity, make_disk({0.05, 0}, 0.1)));
    // non-primitive points count for the full-lattice test
    CHECK(euclidean_lattice_meets(kIdentity, make_disk({2, 2}, 0.1)));

    const HeisLattice shifted{kIdentity, {0.25, 0}};
    // (1,0) lifts to heights Z - 0.25; the plate [0, 0.2) misses them
    CylinderStack s;
    s.cylinders.push_back({make_disk({1, 0}, 0.1), {0.0, 0.2}});
    CHECK_FALSE(heis_lattice_meets(shifted, s));
    // widen the interval to cover 0.75
    CylinderStack s2;
    s2.cylinders.push_back({make_disk({1, 0}, 0.1), {0.5, 0.9}});
    CHECK(heis_lattice_meets(shifted, s2));
    // central axis
    CylinderStack axis;
    axis.cylinders.push_back({make_disk({0, 0}, 0.05), {1.5, 2.5}});
    CHECK(heis_lattice_meets(shifted, axis));
    CylinderStack axis_short;
    axis_short.cylinders.push_back({make_disk({0, 0}, 0.05), {1.5, 1.9}});
    CHECK_FALSE(heis_lattice_meets(shifted, axis_short));
}
