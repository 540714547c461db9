#include <catch2/catch_amalgamated.hpp>

#include "heislat/heis.hpp"
#include "heislat/rng.hpp"

using namespace heislat;

namespace {

HIntPoint random_int_point(Rng& rng, long long bound) {
    const auto draw = [&] {
        return static_cast<long long>(rng.below(2 * static_cast<std::uint64_t>(bound) + 1)) -
               bound;
    };
    return {draw(), draw(), draw()};
}

}  // namespace

TEST_CASE("twisted addition") {
    CHECK(h_add(HPoint{1, 0, 0}, HPoint{0, 1, 0}) == HPoint{1, 1, 1});
    CHECK(h_add(HPoint{0, 0, 0}, HPoint{2.5, -1, 7}) == HPoint{2.5, -1, 7});
    CHECK(h_add(HPoint{0, 1, 0}, HPoint{1, 0, 0}) == HPoint{1, 1, -1});
}

TEST_CASE("negation inverts") {
    CHECK(h_neg(HPoint{1, 2, 3}) == HPoint{-1, -2, -3});
    CHECK(h_neg(HPoint{0, 0, 5}) == HPoint{0, 0, -5});
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const HIntPoint p = random_int_point(rng, 1000);
        CHECK(h_add(p, h_neg(p)) == HIntPoint{0, 0, 0});
    }
}

TEST_CASE("associativity on integer triples") {
    Rng rng(42);
    for (int i = 0; i < 20000; ++i) {
        const HIntPoint p = random_int_point(rng, 1000);
        const HIntPoint q = random_int_point(rng, 1000);
        const HIntPoint w = random_int_point(rng, 1000);
        REQUIRE(h_add(h_add(p, q), w) == h_add(p, h_add(q, w)));
    }
}

TEST_CASE("g_star closed form") {
    CHECK(g_star(Mat2::identity()) == Mat2::identity());
    CHECK(g_star(Mat2{1, 1, 0, 1}) == Mat2{1, 0, -1, 1});
    const Mat2 gs = g_star(Mat2{2, 0, 0, 0.5});
    CHECK(gs.a11 == Catch::Approx(0.5));
    CHECK(gs.a22 == Catch::Approx(2.0));
    CHECK(gs.a12 == 0.0);
    CHECK(gs.a21 == 0.0);
    CHECK_THROWS_AS(g_star(Mat2{1, 0, 0, 2}), std::invalid_argument);
}

TEST_CASE("non-unimodular automorphisms are rejected") {
    CHECK_THROWS_AS(AutElement(Mat2{2, 0, 0, 1}, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(AutElementZ(Mat2i{1, 0, 0, -1}, {0, 0}), std::invalid_argument);
}

TEST_CASE("action examples") {
    const HPoint p{1, 1, 0};
    CHECK(aut_act(AutElement::identity(), p) == p);
    CHECK(aut_act(AutElement(Mat2::identity(), {2, 3}), p) == HPoint{1, 1, -5});
    const HPoint q = aut_act(AutElement(Mat2{2, 0, 0, 0.5}, {0, 0}), HPoint{1, 0, 7});
    CHECK(q.r == Catch::Approx(0.5));
    CHECK(q.s == 0.0);
    CHECK(q.t == Catch::Approx(7.0));
}

TEST_CASE("composition examples and semidirect law") {
    const AutElement id = AutElement::identity();
    const AutElement b(Mat2{1, 1, 0, 1}, {0.25, -3});
    CHECK(aut_compose(id, b).g == b.g);
    CHECK(aut_compose(id, b).v == b.v);
    const AutElement c = aut_compose(AutElement(Mat2::identity(), {1, 0}),
                                     AutElement(Mat2::identity(), {0, 1}));
    CHECK(c.v == Vec2{1, 1});
    const AutElement d = aut_compose(AutElement(Mat2{1, 1, 0, 1}, {0, 0}),
                                     AutElement(Mat2::identity(), {1, 0}));
    CHECK(d.g == Mat2{1, 1, 0, 1});
    CHECK(d.v == Vec2{1, 0});
}

TEST_CASE("composition acts as the composed map") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        const double t1 = rng.uniform(-1, 1), t2 = rng.uniform(-1, 1);
        const AutElement a(Mat2{1, t1, 0, 1} * Mat2{1, 0, t2, 1},
                           {rng.uniform(-2, 2), rng.uniform(-2, 2)});
        const AutElement b(Mat2::rotation(rng.uniform(0, 6.28)),
                           {rng.uniform(-2, 2), rng.uniform(-2, 2)});
        const HPoint p{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const HPoint lhs = aut_act(aut_compose(a, b), p);
        const HPoint rhs = aut_act(a, aut_act(b, p));
        CHECK(lhs.r == Catch::Approx(rhs.r).margin(1e-9));
        CHECK(lhs.s == Catch::Approx(rhs.s).margin(1e-9));
        CHECK(lhs.t == Catch::Approx(rhs.t).margin(1e-9));
    }
}

TEST_CASE("action is an automorphism of the group law") {
    Rng rng(13);
    for (int i = 0; i < 2000; ++i) {
        const double sh = rng.uniform(-1, 1);
        const AutElement a(Mat2::rotation(rng.uniform(0, 3.14)) * Mat2{1, sh, 0, 1},
                           {rng.uniform(-2, 2), rng.uniform(-2, 2)});
        const HPoint p{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const HPoint q{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const HPoint lhs = aut_act(a, h_add(p, q));
        const HPoint rhs = h_add(aut_act(a, p), aut_act(a, q));
        CHECK(lhs.r == Catch::Approx(rhs.r).margin(1e-8));
        CHECK(lhs.s == Catch::Approx(rhs.s).margin(1e-8));
        CHECK(lhs.t == Catch::Approx(rhs.t).margin(1e-8));
    }
}

TEST_CASE("volume preservation") {
    Rng rng(3);
    for (int i = 0; i < 500; ++i) {
        const AutElement a(Mat2::rotation(rng.uniform(0, 3.14)) *
                               Mat2{1, rng.uniform(-2, 2), 0, 1},
                           {rng.uniform(-5, 5), rng.uniform(-5, 5)});
        CHECK(std::abs(aut_det3(a)) == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("primitivity") {
    CHECK(is_primitive({2, 3, 17}));
    CHECK_FALSE(is_primitive({2, 4, 1}));
    CHECK_FALSE(is_primitive({0, 0, 5}));
    CHECK(is_primitive({0, 1, 9}));
    CHECK(is_primitive({-1, 0, 0}));
}

TEST_CASE("integer automorphisms preserve primitivity") {
    Rng rng(5);
    for (int i = 0; i < 2000; ++i) {
        // random SL(2,Z) as a short word in the elementary matrices
        Mat2i g = Mat2i::identity();
        for (int j = 0; j < 6; ++j) {
            const long long s = static_cast<long long>(rng.below(5)) - 2;
            g = (j % 2 == 0) ? g * Mat2i{1, s, 0, 1} : g * Mat2i{1, 0, s, 1};
        }
        const AutElementZ a(g, {static_cast<long long>(rng.below(9)) - 4,
                                static_cast<long long>(rng.below(9)) - 4});
        const HIntPoint p = random_int_point(rng, 50);
        CHECK(is_primitive(p) == is_primitive(aut_act(a, p)));
    }
}
