#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fricke/rng.hpp"
#include "fricke/stats.hpp"
#include "fricke/su2.hpp"

using namespace fricke;

TEST_CASE("group law basics") {
    const Su2 id = Su2::identity();
    const Su2 i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};

    RandomStream rng(7);
    const Su2 g = rng.haar_su2();
    CHECK(dist_max(id * g, g) == 0.0);
    CHECK(dist_max(g * g.inverse(), id) < 1e-15);
    CHECK(dist_max(i * j, k) == 0.0);

    // associativity within tolerance
    const Su2 h = rng.haar_su2(), l = rng.haar_su2();
    CHECK(dist_max((g * h) * l, g * (h * l)) < 1e-12);
}

TEST_CASE("trace and angle") {
    CHECK(trace(Su2::identity()) == 2.0);
    CHECK(trace(Su2{0, 1, 0, 0}) == 0.0);
    CHECK(trace(-Su2::identity()) == -2.0);

    CHECK(angle(Su2::identity()) == 0.0);
    CHECK(angle(Su2{0, 1, 0, 0}) == Catch::Approx(kPi / 2));
    CHECK(angle(-Su2::identity()) == Catch::Approx(kPi));
}

TEST_CASE("variation and exponential") {
    const double th = kPi / 3;
    const Su2 g{std::cos(th), std::sin(th), 0, 0};
    const AlgebraVec u = variation(g);
    CHECK(u.v[0] == Catch::Approx(1.0));
    CHECK(u.v[1] == 0.0);
    CHECK(u.v[2] == 0.0);

    // F(-g): normalized imaginary part of -g points the other way
    const AlgebraVec um = variation(-g);
    CHECK(um.v[0] == Catch::Approx(-1.0));

    CHECK(dist_max(exp_scaled(u, 0.0), Su2::identity()) == 0.0);
    CHECK(dist_max(exp_scaled(u, kPi), -Su2::identity()) < 1e-15);
    CHECK(dist_max(exp_scaled(u, 2 * kPi), Su2::identity()) < 1e-15);

    CHECK_THROWS_AS(variation(Su2::identity()), CentralElementError);
    CHECK_THROWS_AS(variation(-Su2::identity()), CentralElementError);
}

TEST_CASE("reconstruction g = exp(f(g) F(g)) on random elements") {
    RandomStream rng(11);
    double dev = 0;
    for (int i = 0; i < 10000; ++i) {
        const Su2 g = rng.haar_su2();
        dev = std::max(dev, dist_max(g, exp_scaled(variation(g), angle(g))));
    }
    CHECK(dev < 1e-10);
}

TEST_CASE("trace is conjugation invariant") {
    RandomStream rng(13);
    double dev = 0;
    for (int i = 0; i < 5000; ++i) {
        const Su2 g = rng.haar_su2(), h = rng.haar_su2();
        dev = std::max(dev, std::abs(trace(conjugate(h, g)) - trace(g)));
    }
    CHECK(dev < 1e-12);
}

TEST_CASE("variation is equivariant") {
    RandomStream rng(17);
    double dev = 0;
    for (int i = 0; i < 2000; ++i) {
        const Su2 g = rng.haar_su2(), h = rng.haar_su2();
        const AlgebraVec f = variation(g);
        const Su2 lifted{0, f.v[0], f.v[1], f.v[2]};
        const Su2 moved = h * lifted * h.inverse();
        const AlgebraVec fc = variation(conjugate(h, g));
        dev = std::max(dev, std::abs(moved.q[1] - fc.v[0]));
        dev = std::max(dev, std::abs(moved.q[2] - fc.v[1]));
        dev = std::max(dev, std::abs(moved.q[3] - fc.v[2]));
    }
    CHECK(dev < 1e-10);
}

TEST_CASE("haar sampler moments and Weyl distribution") {
    const int n = 1000000;
    RandomStream rng(19);
    KahanSum m1, m2;
    std::vector<double> traces;
    traces.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double t = trace(rng.haar_su2());
        m1.add(t);
        m2.add(t * t);
        traces.push_back(t);
    }
    CHECK(std::abs(m1.value() / n) < 0.005);
    CHECK(std::abs(m2.value() / n - 1.0) < 0.005);

    // KS against the semicircle CDF induced by the Weyl density (2/pi) sin^2
    auto cdf = [](double t) {
        t = std::clamp(t, -2.0, 2.0);
        return ((t / 2.0) * std::sqrt(4.0 - t * t) + 2.0 * std::asin(t / 2.0) + kPi) / (2.0 * kPi);
    };
    const double ks = ks_statistic(std::move(traces), cdf);
    CHECK(ks < 1.6276 / std::sqrt(static_cast<double>(n)));  // 1% critical value
}

TEST_CASE("independent streams decorrelate") {
    RandomStream a = RandomStream(99).derive(1);
    RandomStream b = RandomStream(99).derive(2);
    const int n = 100000;
    KahanSum sab, sa, sb, saa, sbb;
    for (int i = 0; i < n; ++i) {
        const double ta = trace(a.haar_su2()), tb = trace(b.haar_su2());
        sab.add(ta * tb);
        sa.add(ta);
        sb.add(tb);
        saa.add(ta * ta);
        sbb.add(tb * tb);
    }
    const double ma = sa.value() / n, mb = sb.value() / n;
    const double cov = sab.value() / n - ma * mb;
    const double r = cov / std::sqrt((saa.value() / n - ma * ma) * (sbb.value() / n - mb * mb));
    CHECK(std::abs(r) < 0.01);
}

TEST_CASE("stream derivation is deterministic") {
    RandomStream a = RandomStream(4242).derive(7);
    RandomStream b = RandomStream(4242).derive(7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}
