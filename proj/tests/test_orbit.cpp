#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <set>

#include "heislat/orbit.hpp"

using namespace heislat;

namespace {

int euler_phi(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

Vec2i random_primitive(Rng& rng, long long bound) {
    for (;;) {
        const Vec2i v{static_cast<long long>(rng.below(2 * bound + 1)) - bound,
                      static_cast<long long>(rng.below(2 * bound + 1)) - bound};
        if (gcd_ll(v.x, v.y) == 1) return v;
    }
}

}  // namespace

TEST_CASE("det_pair") {
    CHECK(det_pair(PrimPair({1, 0}, {0, 1})) == 1);
    CHECK(det_pair(PrimPair({1, 0}, {1, 0})) == 0);
    CHECK(det_pair(PrimPair({1, 0}, {2, 5})) == 5);
    CHECK_THROWS_AS(PrimPair({2, 4}, {0, 1}), std::domain_error);
}

TEST_CASE("canonical forms of the named pairs") {
    const OrbitClass a = canonicalize(PrimPair({1, 0}, {0, 1}));
    CHECK(a.D == 1);
    CHECK(a.rep == PrimPair({1, 0}, {0, 1}));

    const OrbitClass b = canonicalize(PrimPair({1, 0}, {1, 0}));
    CHECK(b.D == 0);
    CHECK(b.sign_tag == 1);

    const OrbitClass bn = canonicalize(PrimPair({1, 0}, {-1, 0}));
    CHECK(bn.D == 0);
    CHECK(bn.sign_tag == -1);
    CHECK(b != bn);

    const OrbitClass c = canonicalize(PrimPair({2, 1}, {1, 1}));
    CHECK(c.D == 1);
    CHECK(c.rep == PrimPair({1, 0}, {0, 1}));
}

TEST_CASE("same_orbit") {
    Rng rng(17);
    for (int i = 0; i < 500; ++i) {
        const PrimPair p(random_primitive(rng, 20), random_primitive(rng, 20));
        const Mat2i gamma = random_sl2z(rng, static_cast<int>(rng.below(10)) + 1);
        CHECK(same_orbit(p, apply(gamma, p)));
    }
    CHECK_FALSE(same_orbit(PrimPair({1, 0}, {0, 1}), PrimPair({1, 0}, {1, 0})));
    CHECK_FALSE(same_orbit(PrimPair({1, 0}, {1, 5}), PrimPair({1, 0}, {2, 5})));
}

TEST_CASE("canonicalize is gamma-invariant") {
    Rng rng(23);
    for (int i = 0; i < 3000; ++i) {
        const PrimPair p(random_primitive(rng, 30), random_primitive(rng, 30));
        const Mat2i gamma = random_sl2z(rng, static_cast<int>(rng.below(12)) + 1);
        REQUIRE(canonicalize(p) == canonicalize(apply(gamma, p)));
    }
}

TEST_CASE("canonicalize is idempotent and witnessed") {
    Rng rng(29);
    for (int i = 0; i < 1000; ++i) {
        const PrimPair p(random_primitive(rng, 40), random_primitive(rng, 40));
        const CanonicalResult c = canonicalize_with_witness(p);
        CHECK(apply(c.gamma, p) == c.cls.rep);
        CHECK(canonicalize(c.cls.rep) == c.cls);
        CHECK(det_pair(c.cls.rep) == det_pair(p));
    }
}

TEST_CASE("orbit counts match Euler phi by brute force") {
    CHECK(orbit_count_bruteforce(1, 50).count == 1);
    CHECK(orbit_count_bruteforce(-1, 50).count == 1);
    CHECK(orbit_count_bruteforce(0, 50).count == 2);
    for (int d = 2; d <= 6; ++d) {
        const OrbitCount pos = orbit_count_bruteforce(d, 60);
        CHECK(pos.count == euler_phi(d));
        const OrbitCount neg = orbit_count_bruteforce(-d, 60);
        CHECK(neg.count == euler_phi(d));
        // observed residues are exactly the units mod d
        CHECK(pos.residues.size() == static_cast<std::size_t>(euler_phi(d)));
        for (const long long k : pos.residues) CHECK(gcd_ll(k, d) == 1);
    }
    CHECK(orbit_count_bruteforce(4, 60).count == 2);
    CHECK(orbit_count_bruteforce(5, 60).count == 4);
}

TEST_CASE("brute force rejects out-of-contract arguments") {
    CHECK_THROWS_AS(orbit_count_bruteforce(5, 10), std::invalid_argument);
    CHECK_THROWS_AS(orbit_count_bruteforce(13, 60), std::invalid_argument);
}

TEST_CASE("pair enumeration is exhaustive and duplicate-free") {
    const long long height = 12;
    for (const long long d : {0LL, 1LL, -1LL, 5LL, -7LL, 12LL}) {
        std::set<std::array<long long, 4>> quadratic;
        for (long long mx = -height; mx <= height; ++mx)
            for (long long my = -height; my <= height; ++my) {
                if (gcd_ll(mx, my) != 1) continue;
                for (long long nx = -height; nx <= height; ++nx)
                    for (long long ny = -height; ny <= height; ++ny) {
                        if (gcd_ll(nx, ny) != 1) continue;
                        if (mx * ny - my * nx == d) quadratic.insert({mx, my, nx, ny});
                    }
            }
        std::set<std::array<long long, 4>> linear;
        std::size_t visits = 0;
        for_each_det_pair(d, height, [&](const PrimPair& p) {
            ++visits;
            linear.insert({p.m.x, p.m.y, p.n.x, p.n.y});
        });
        CHECK(visits == linear.size());  // no duplicates
        CHECK(linear == quadratic);      // nothing missed, nothing extra
    }
}
