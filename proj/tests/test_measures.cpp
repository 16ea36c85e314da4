#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fricke/measures.hpp"

using namespace fricke;

TEST_CASE("frobenius-schur indicators follow the parity rule") {
    CHECK(fs_indicator(1) == 1);
    CHECK(fs_indicator(2) == -1);
    CHECK(fs_indicator(3) == 1);
    for (int n = 4; n <= 20; ++n) CHECK(fs_indicator(n) == (n % 2 == 1 ? 1 : -1));
    CHECK_THROWS_AS(fs_indicator(0), std::invalid_argument);
}

TEST_CASE("volume series closed values") {
    // independently re-derived: sum over odd n of n^-2 is pi^2/8 and over
    // even n is pi^2/24, so f_4(1) = pi^2/6; for k = 5 the odd sum is
    // 7 zeta(3)/8 and the even sum zeta(3)/8, so f_5(1) = 3 zeta(3)/4.
    const double zeta3 = 1.2020569031595942854;
    const auto v4 = volume_series(4, 1e-10);
    CHECK(std::abs(v4.partial_sum - kPi * kPi / 6.0) < 1e-9);
    CHECK(v4.truncation_bound <= 1e-10);

    const auto v5 = volume_series(5, 1e-12);
    CHECK(std::abs(v5.partial_sum - 0.75 * zeta3) < 1e-11);

    CHECK_THROWS_AS(volume_series(3, 1e-6), DivergentSeries);
    CHECK_THROWS_AS(volume_series(4, -1.0), std::invalid_argument);
}

TEST_CASE("series bracket contains finer partial sums") {
    const auto coarse = volume_series(4, 1e-4);
    const auto fine = volume_series(4, 1e-13);
    CHECK(coarse.truncation_bound <= 1e-4);
    CHECK(fine.truncation_bound <= 1e-13);
    CHECK(fine.term_count >= coarse.term_count);
    CHECK(fine.partial_sum <= coarse.partial_sum + coarse.truncation_bound);
    CHECK(fine.partial_sum >= coarse.partial_sum - coarse.truncation_bound);
    // and the bracket contains the analytic limit
    CHECK(std::abs(coarse.partial_sum - kPi * kPi / 6.0) <= coarse.truncation_bound + 1e-12);
}

TEST_CASE("series value approaches 1 as the genus grows") {
    double prev_even = 1e300, prev_odd = 1e300;
    for (int k : {6, 8, 10, 12}) {
        const double v = volume_series(k, 1e-12).partial_sum;
        CHECK(std::abs(v - 1.0) < prev_even);
        prev_even = std::abs(v - 1.0);
    }
    for (int k : {5, 7, 9, 11}) {
        const double v = volume_series(k, 1e-12).partial_sum;
        CHECK(std::abs(v - 1.0) < prev_odd);
        prev_odd = std::abs(v - 1.0);
    }
}

TEST_CASE("smeared estimator expectation matches an independent quadrature") {
    // reference values computed with an independent adaptive quadrature of
    // the ball-averaged characters
    CHECK(std::abs(smeared_series_value(4, 0.15) - 1.5612318) < 2e-5);
    CHECK(std::abs(smeared_series_value(4, 0.075) - 1.6019402) < 2e-5);
    CHECK(std::abs(smeared_series_value(5, 0.15) - 0.9020112) < 2e-5);
}

TEST_CASE("mc density estimator is consistent with its expectation") {
    const RandomStream rng(31);
    const auto est = mc_identity_density(4, 0.2, 300000, rng, 4);
    const double expect = smeared_series_value(4, 0.2);
    CHECK(std::abs(est.estimate - expect) < 4.0 * est.std_error);
    CHECK(est.std_error > 0);
    CHECK(est.estimate >= 0);
}

TEST_CASE("mc density chunking is worker-count independent") {
    const RandomStream rng(37);
    const auto a = mc_identity_density(4, 0.2, 50000, rng, 1, 64);
    const auto b = mc_identity_density(4, 0.2, 50000, rng, 4, 64);
    CHECK(a.hits == b.hits);
    CHECK(a.estimate == b.estimate);
}

TEST_CASE("mc density invariant under a conjugated presentation word") {
    // numerical shadow of inner invariance: estimate the same density with
    // q(x) replaced by g q(x) g^-1 for a per-sample Haar g
    const int k = 4;
    const double eps = 0.2;
    const std::int64_t n = 200000;
    const auto plain = mc_identity_density(k, eps, n, RandomStream(41), 4);

    RandomStream rng = RandomStream(43);
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        Su2 q = Su2::identity();
        for (int j = 0; j < k; ++j) {
            const Su2 g = rng.haar_su2();
            q = q * (g * g);
        }
        const Su2 conj_word = conjugate(rng.haar_su2(), q);
        if (angle(conj_word.normalized()) < eps) ++hits;
    }
    const double est = (static_cast<double>(hits) / n) / ball_volume(eps);
    const double se = std::sqrt(static_cast<double>(hits)) / n / ball_volume(eps);
    const double comb = std::sqrt(se * se + plain.std_error * plain.std_error);
    CHECK(std::abs(est - plain.estimate) < 3.5 * comb);
}

TEST_CASE("relative sampling hits the window") {
    RandomStream rng(47);
    RelativeWindow win;
    win.targets = {0.0, 0.0, 0.0};
    win.width = 0.05;
    for (int i = 0; i < 20; ++i) {
        const RelativeSample s = sample_relative(Surface::N13, win, rng);
        const auto bt = boundary_traces(Surface::N13, coords_from_rep(s.rep));
        for (double v : bt) CHECK(std::abs(v) <= 0.05 + 1e-12);
    }
}

TEST_CASE("width-4 window is plain haar") {
    RandomStream rng(53);
    RelativeWindow win;
    win.targets = {0.0};
    win.width = 4.0;
    const RelativeSample s = sample_relative(Surface::N31, win, rng);
    CHECK(s.proposals == 3);  // every proposal accepted: three generator draws
}

TEST_CASE("acceptance rate is stable across seeds") {
    RelativeWindow win;
    win.targets = {0.0, 0.0, 0.0};
    win.width = 0.1;
    auto rate = [&](std::uint64_t seed) {
        RandomStream rng(seed);
        std::int64_t accepted = 0, proposals = 0;
        for (int i = 0; i < 200; ++i) {
            const RelativeSample s = sample_relative(Surface::N13, win, rng);
            ++accepted;
            proposals += s.proposals;
        }
        return std::pair<double, std::int64_t>{static_cast<double>(accepted) / proposals, proposals};
    };
    const auto [r1, n1] = rate(101);
    const auto [r2, n2] = rate(202);
    // binomial-ish 3 sigma band on the pooled rate
    const double pooled = (r1 + r2) / 2;
    const double se = std::sqrt(pooled * (1 - pooled) * (1.0 / n1 + 1.0 / n2));
    CHECK(std::abs(r1 - r2) < 3.5 * se + 1e-9);
}

TEST_CASE("too tight a window raises") {
    RandomStream rng(59);
    RelativeWindow win;
    win.targets = {0.0};
    win.width = 3e-7;
    CHECK_THROWS_AS(sample_relative(Surface::N31, win, rng), WindowTooTight);
}

TEST_CASE("quadrature_unresolved guard stays quiet for valid dimensions") {
    for (int n = 1; n <= 12; ++n) CHECK_NOTHROW(fs_indicator(n));
}
