#include <catch2/catch_amalgamated.hpp>

#include <thread>

#include "fricke/char_point.hpp"
#include "fricke/rng.hpp"
#include "fricke/trace_calculus.hpp"
#include "fricke/twist_maps.hpp"

using namespace fricke;

namespace {
Word rand_word(RandomStream& rng, std::size_t max_len) {
    std::vector<Letter> ls;
    const std::size_t len = rng.uniform_below(max_len + 1);
    for (std::size_t i = 0; i < len; ++i) {
        const int g = 1 + static_cast<int>(rng.uniform_below(3));
        ls.push_back(static_cast<Letter>(rng.uniform_below(2) ? g : -g));
    }
    return Word(std::move(ls));
}

Representation haar_rep(RandomStream& rng) {
    return {{rng.haar_su2(), rng.haar_su2(), rng.haar_su2()}};
}
}  // namespace

TEST_CASE("base reductions print canonically") {
    CHECK(trace_of_word(Word::parse("A")).str() == "a");
    CHECK(trace_of_word(Word::parse("")).str() == "2");
    CHECK(trace_of_word(Word::parse("Ab")).str() == "a*b - x");
    CHECK(trace_of_word(Word::parse("AABC")).str() == "a*d - y");
    CHECK(trace_of_word(Word::parse("AABBC")).str() == "a*b*d - a*z - b*y + c");
    CHECK(trace_of_word(Word::parse("AABBCC")).str()
          == "a*b*c*d - a*b*x - a*c*z - b*c*y + a^2 + b^2 + c^2 - 2");
    CHECK(trace_of_word(Word::parse("ACB")).str() == "-a*b*c + a*y + b*z + c*x - d");
    // invariance under rotation and inversion
    CHECK(trace_of_word(Word::parse("BCA")) == trace_of_word(Word::parse("ABC")));
    CHECK(trace_of_word(Word::parse("cba")).eval({.3, .4, .5, .6, .7, .8, .9})
          == Catch::Approx(trace_of_word(Word::parse("ABC")).eval({.3, .4, .5, .6, .7, .8, .9})));
}

TEST_CASE("fricke polynomial values") {
    const TracePolynomial f = fricke_polynomial();
    CHECK(f.eval({2, 2, 2, 2, 2, 2, 2}) == 0.0);
    CHECK(f.eval({0, 0, 0, 0, 0, 0, 0}) == -4.0);

    RandomStream rng(23);
    double dev = 0;
    for (int i = 0; i < 20000; ++i) {
        const auto pt = coords_from_rep(haar_rep(rng)).to_array();
        dev = std::max(dev, std::abs(f.eval(pt)));
    }
    CHECK(dev < 1e-9);
}

TEST_CASE("soundness against direct evaluation") {
    RandomStream rng(29);
    double dev = 0;
    for (int i = 0; i < 120; ++i) {
        const Word w = rand_word(rng, 24);
        const TracePolynomial p = trace_of_word(w);
        for (int j = 0; j < 60; ++j) {
            const Representation rho = haar_rep(rng);
            dev = std::max(dev, std::abs(p.eval(coords_from_rep(rho).to_array())
                                         - trace(evaluate(w, rho))));
        }
    }
    CHECK(dev < 1e-9);
}

TEST_CASE("tr(ACB) identity certified numerically") {
    RandomStream rng(31);
    double dev = 0;
    for (int i = 0; i < 2000; ++i) {
        const Representation rho = haar_rep(rng);
        const CharPoint p = coords_from_rep(rho);
        const double expected = p.a * p.y + p.b * p.z + p.c * p.x - p.a * p.b * p.c - p.d;
        dev = std::max(dev, std::abs(trace(evaluate(Word::parse("ACB"), rho)) - expected));
    }
    CHECK(dev < 1e-12);
}

TEST_CASE("induced maps") {
    const CoordinateMap id_map = induced_map(identity_endo());
    for (int i = 0; i < 7; ++i) CHECK(id_map.comp[i] == TracePolynomial::variable(i));

    // d-component of the N22 twist: b^2 d - b x y - b z + c x + a y - d
    const CoordinateMap n22 = induced_map(twist_endo(Surface::N22, Twist::U));
    CHECK(n22.comp[6].str() == "b^2*d - b*x*y + a*y - b*z + c*x - d");

    // x-component of the N13 tau_U: ab - zy + cd - x
    const CoordinateMap n13u = induced_map(twist_endo(Surface::N13, Twist::U));
    CHECK(n13u.comp[3].str() == "a*b + c*d - y*z - x");

    // numeric certificate on representation points
    RandomStream rng(37);
    double dev = 0;
    for (int i = 0; i < 500; ++i) {
        const Representation rho = haar_rep(rng);
        const auto pt = coords_from_rep(rho).to_array();
        const auto img = n22.comp[6].eval(pt);
        const CharPoint q = coords_from_rep(pullback(twist_endo(Surface::N22, Twist::U), rho));
        dev = std::max(dev, std::abs(img - q.d));
    }
    CHECK(dev < 1e-10);
}

TEST_CASE("polynomial evaluation basics") {
    CHECK(TracePolynomial::constant(2).eval({1, 1, 1, 1, 1, 1, 1}) == 2.0);
    const TracePolynomial ad_minus_y = trace_of_word(Word::parse("AABC"));
    CHECK(ad_minus_y.eval({2, 2, 2, 2, 2, 2, 2}) == 2.0);
}

TEST_CASE("memo table is safe under concurrent use") {
    // distinct fresh words exercised from several threads; every thread must
    // see identical polynomials
    std::vector<Word> words;
    RandomStream rng(41);
    for (int i = 0; i < 40; ++i) words.push_back(rand_word(rng, 18));
    std::vector<std::vector<std::string>> results(4);
    std::vector<std::thread> pool;
    for (int th = 0; th < 4; ++th)
        pool.emplace_back([&, th] {
            for (const Word& w : words) results[static_cast<std::size_t>(th)].push_back(trace_of_word(w).str());
        });
    for (auto& t : pool) t.join();
    for (int th = 1; th < 4; ++th) CHECK(results[static_cast<std::size_t>(th)] == results[0]);
}

TEST_CASE("fricke preserved by induced maps on the variety") {
    RandomStream rng(43);
    const TracePolynomial f = fricke_polynomial();
    double dev = 0;
    for (Surface s : {Surface::N22, Surface::N13, Surface::N31})
        for (Twist t : twists_of(s)) {
            const CoordinateMap m = induced_map(twist_endo(s, t));
            for (int i = 0; i < 200; ++i) {
                const auto pt = coords_from_rep(haar_rep(rng)).to_array();
                dev = std::max(dev, std::abs(f.eval(m.eval(pt))));
            }
        }
    CHECK(dev < 1e-9);
}
