#include <catch2/catch_amalgamated.hpp>

#include "fricke/char_point.hpp"
#include "fricke/orbit.hpp"
#include "fricke/rng.hpp"
#include "fricke/twist_maps.hpp"

using namespace fricke;

namespace {
Representation haar_rep(RandomStream& rng) {
    return {{rng.haar_su2(), rng.haar_su2(), rng.haar_su2()}};
}
}  // namespace

TEST_CASE("coordinates of representations") {
    const CharPoint id = coords_from_rep(Representation::identity());
    CHECK(id == CharPoint{2, 2, 2, 2, 2, 2, 2});

    // A = B = C = i: squares are -1
    const Su2 qi{0, 1, 0, 0};
    const CharPoint p = coords_from_rep({{qi, qi, qi}});
    CHECK(p.a == 0.0);
    CHECK(p.b == 0.0);
    CHECK(p.c == 0.0);
    CHECK(p.x == -2.0);
    CHECK(p.y == -2.0);
    CHECK(p.z == -2.0);
    CHECK(p.d == 0.0);

    RandomStream rng(3);
    double dev = 0;
    for (int i = 0; i < 20000; ++i)
        dev = std::max(dev, std::abs(fricke_value(coords_from_rep(haar_rep(rng)))));
    CHECK(dev < 1e-9);
}

TEST_CASE("identity character is fixed by every twist") {
    const CharPoint id{2, 2, 2, 2, 2, 2, 2};
    for (Surface s : {Surface::N22, Surface::N13, Surface::N31})
        for (Twist t : twists_of(s)) {
            CHECK(apply_twist(s, t, id) == id);
            CHECK(apply_twist(s, t, id, true) == id);
        }
}

TEST_CASE("twist maps agree with the word-level action") {
    RandomStream rng(5);
    double dev = 0;
    for (int i = 0; i < 1000; ++i) {
        const Representation rho = haar_rep(rng);
        const CharPoint p = coords_from_rep(rho);
        for (Surface s : {Surface::N22, Surface::N13, Surface::N31})
            for (Twist t : twists_of(s)) {
                const EndoF3 e = twist_endo(s, t);
                const auto q1 = apply_twist(s, t, p).to_array();
                const auto q2 = coords_from_rep(pullback(e, rho)).to_array();
                const auto r1 = apply_twist(s, t, p, true).to_array();
                const auto r2 = coords_from_rep(pullback(e.inverted(), rho)).to_array();
                for (int c = 0; c < 7; ++c) {
                    dev = std::max(dev, std::abs(q1[c] - q2[c]));
                    dev = std::max(dev, std::abs(r1[c] - r2[c]));
                }
            }
    }
    CHECK(dev < 1e-8);
}

TEST_CASE("invariant coordinates are preserved bitwise") {
    RandomStream rng(7);
    for (int i = 0; i < 200; ++i) {
        const CharPoint p = coords_from_rep(haar_rep(rng));
        {
            const CharPoint q = apply_twist(Surface::N13, Twist::T, p);
            CHECK(q.a == p.a);
            CHECK(q.x == p.x);
            CHECK(q.b == p.b);
            CHECK(q.c == p.c);
        }
        {
            const CharPoint q = apply_twist(Surface::N13, Twist::U, p);
            CHECK(q.a == p.a);
            CHECK(q.z == p.z);
        }
        {
            const CharPoint q = apply_twist(Surface::N13, Twist::W, p);
            CHECK(q.x == p.x);
            CHECK(q.z == p.z);
        }
        {
            const CharPoint q = apply_twist(Surface::N22, Twist::U, p);
            CHECK(q.a == p.a);
            CHECK(q.b == p.b);
            CHECK(q.y == p.y);
            CHECK(q.c == p.c);
        }
        {
            const CharPoint q = apply_twist(Surface::N31, Twist::U, p);
            CHECK(q.a == p.a);
            CHECK(q.b == p.b);
            CHECK(q.c == p.c);
            CHECK(q.z == p.z);
        }
    }
}

TEST_CASE("boundary traces preserved by the twists") {
    RandomStream rng(11);
    double dev = 0;
    for (int i = 0; i < 2000; ++i) {
        const CharPoint p = coords_from_rep(haar_rep(rng));
        for (Surface s : {Surface::N22, Surface::N13, Surface::N31})
            for (Twist t : twists_of(s)) {
                const auto b0 = boundary_traces(s, p);
                const auto b1 = boundary_traces(s, apply_twist(s, t, p));
                for (std::size_t c = 0; c < b0.size(); ++c)
                    dev = std::max(dev, std::abs(b0[c] - b1[c]));
            }
    }
    CHECK(dev < 1e-10);
}

TEST_CASE("twist inverse round trip") {
    RandomStream rng(13);
    double dev = 0;
    for (int i = 0; i < 500; ++i) {
        const CharPoint p = coords_from_rep(haar_rep(rng));
        for (Surface s : {Surface::N22, Surface::N13, Surface::N31})
            for (Twist t : twists_of(s)) {
                const auto q = apply_twist(s, t, apply_twist(s, t, p), true).to_array();
                const auto pp = p.to_array();
                for (int c = 0; c < 7; ++c) dev = std::max(dev, std::abs(q[c] - pp[c]));
            }
    }
    CHECK(dev < 1e-9);
}

TEST_CASE("surface and twist mismatch raises") {
    const CharPoint p{2, 2, 2, 2, 2, 2, 2};
    CHECK_THROWS_AS(apply_twist(Surface::N22, Twist::T, p), TwistDomainError);
    CHECK_THROWS_AS(apply_twist(Surface::N31, Twist::W, p), TwistDomainError);
    CHECK_THROWS_AS(twist_from_name(Surface::N22, "tau_T"), std::invalid_argument);
}

TEST_CASE("orbits") {
    RandomStream rng(17);
    const CharPoint start = coords_from_rep(haar_rep(rng));

    const auto single = orbit(Surface::N13, {{Twist::T, false}}, start, 0);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == start);

    const CharPoint id{2, 2, 2, 2, 2, 2, 2};
    const auto fixed = orbit(Surface::N13, {{Twist::T, false}, {Twist::U, false}}, id, 50);
    for (const auto& p : fixed) CHECK(p == id);

    // determinism: bitwise identical reruns
    const auto o1 = orbit(Surface::N13, {{Twist::T, false}, {Twist::W, true}}, start, 200);
    const auto o2 = orbit(Surface::N13, {{Twist::T, false}, {Twist::W, true}}, start, 200);
    CHECK(o1 == o2);

    // Fricke residual stays small along long mixed orbits
    const auto o3 = orbit(Surface::N13, {{Twist::T, false}, {Twist::U, false}, {Twist::W, false}},
                          start, 20000);
    double dev = 0;
    for (const auto& p : o3) dev = std::max(dev, std::abs(fricke_value(p)));
    CHECK(dev < 1e-9);
}
