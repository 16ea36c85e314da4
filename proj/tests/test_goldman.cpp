#include <catch2/catch_amalgamated.hpp>

#include "fricke/goldman.hpp"
#include "fricke/rng.hpp"

using namespace fricke;

namespace {
Representation haar_rep(RandomStream& rng) {
    return {{rng.haar_su2(), rng.haar_su2(), rng.haar_su2()}};
}

double coord_dev(const Representation& r1, const Representation& r2) {
    const auto a = coords_from_rep(r1).to_array(), b = coords_from_rep(r2).to_array();
    double d = 0;
    for (int i = 0; i < 7; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

const SeparatingDecomposition kSep{{0}, Word::parse("AA")};
const HNNDecomposition kHnn{{0, 1}, 2, Word::parse("AB"), Word::parse("ba")};
}  // namespace

TEST_CASE("separating flow") {
    RandomStream rng(3);
    double dev0 = 0, devpi = 0, devtr = 0, devaside = 0;
    for (int i = 0; i < 500; ++i) {
        const Representation rho = haar_rep(rng);
        dev0 = std::max(dev0, coord_dev(flow_separating(kSep, rho, 0.0), rho));
        devpi = std::max(devpi, coord_dev(flow_separating(kSep, rho, kPi), rho));
        const double tr0 = trace(evaluate(kSep.gamma, rho));
        for (int j = 0; j < 20; ++j) {
            const double t = rng.uniform01() * 2 * kPi;
            const Representation f = flow_separating(kSep, rho, t);
            devtr = std::max(devtr, std::abs(trace(evaluate(kSep.gamma, f)) - tr0));
            devaside = std::max(devaside, dist_max(f.gens[0], rho.gens[0]));  // A-side untouched
        }
    }
    CHECK(dev0 == 0.0);
    CHECK(devpi < 1e-9);
    CHECK(devtr < 1e-10);
    CHECK(devaside == 0.0);
}

TEST_CASE("hnn flow") {
    RandomStream rng(5);
    double dev0 = 0, dev2pi = 0, devneg = 0, deveven = 0;
    for (int i = 0; i < 500; ++i) {
        const Representation rho = haar_rep(rng);
        dev0 = std::max(dev0, coord_dev(flow_hnn(kHnn, rho, 0.0), rho));
        dev2pi = std::max(dev2pi, coord_dev(flow_hnn(kHnn, rho, 2 * kPi), rho));
        // t = pi: the beta image is negated (zeta_pi = -I)
        const Representation fpi = flow_hnn(kHnn, rho, kPi);
        devneg = std::max(devneg, dist_max(fpi.gens[2], -rho.gens[2]));
        // characters of words with an even number of beta letters unchanged
        for (const char* w : {"CC", "ACBC", "CBCA"})
            deveven = std::max(deveven, std::abs(trace(evaluate(Word::parse(w), fpi))
                                                 - trace(evaluate(Word::parse(w), rho))));
    }
    CHECK(dev0 == 0.0);
    CHECK(dev2pi < 1e-9);
    CHECK(devneg < 1e-12);
    CHECK(deveven < 1e-10);
}

TEST_CASE("central gamma image is rejected") {
    Representation rho = Representation::identity();
    CHECK_THROWS_AS(flow_separating(kSep, rho, 0.5), CentralElementError);
    CHECK_THROWS_AS(flow_hnn(kHnn, rho, 0.5), CentralElementError);
}

TEST_CASE("dehn twist equals the time-f flow") {
    RandomStream rng(7);
    double dev_sep = 0, dev_hnn = 0;
    for (int i = 0; i < 1000; ++i) {
        const Representation rho = haar_rep(rng);
        dev_sep = std::max(dev_sep, twist_equals_flow(kSep, rho).max_coord_dev);
        dev_hnn = std::max(dev_hnn, twist_equals_flow(kHnn, rho).max_coord_dev);
    }
    CHECK(dev_sep < 1e-9);
    CHECK(dev_hnn < 1e-9);
}

TEST_CASE("flow additivity on characters") {
    RandomStream rng(11);
    double dev = 0;
    for (int i = 0; i < 300; ++i) {
        const Representation rho = haar_rep(rng);
        const double s = rng.uniform01() * 2 * kPi, t = rng.uniform01() * 2 * kPi;
        dev = std::max(dev, coord_dev(flow_separating(kSep, flow_separating(kSep, rho, t), s),
                                      flow_separating(kSep, rho, s + t)));
        dev = std::max(dev, coord_dev(flow_hnn(kHnn, flow_hnn(kHnn, rho, t), s),
                                      flow_hnn(kHnn, rho, s + t)));
    }
    CHECK(dev < 1e-9);
}

TEST_CASE("angle of gamma is a flow invariant") {
    RandomStream rng(13);
    double dev = 0;
    for (int i = 0; i < 300; ++i) {
        const Representation rho = haar_rep(rng);
        const double t = rng.uniform01() * 2 * kPi;
        dev = std::max(dev, std::abs(angle(evaluate(kSep.gamma, flow_separating(kSep, rho, t)))
                                     - angle(evaluate(kSep.gamma, rho))));
        dev = std::max(dev, std::abs(angle(evaluate(kHnn.gamma_plus, flow_hnn(kHnn, rho, t)))
                                     - angle(evaluate(kHnn.gamma_plus, rho))));
    }
    CHECK(dev < 1e-10);
}

TEST_CASE("gluing checks") {
    // gamma_+ = gamma_- = A with a trace-zero image; the anticommuting axis
    // conjugates i to -i and glues
    HNNDecomposition dec{{0, 1}, 2, Word::parse("A"), Word::parse("A")};
    Representation rho_a{{Su2{0, 1, 0, 0}, Su2::identity(), Su2::identity()}};
    const GluingReport ok = check_gluing(dec, rho_a, Su2{0, 0, 1, 0});
    CHECK(ok.glues);
    CHECK(ok.traces_match);

    // identity b does not glue when rho(gamma_-) rho(gamma_+) != identity
    const GluingReport bad = check_gluing(dec, rho_a, Su2::identity());
    CHECK_FALSE(bad.glues);
    CHECK(bad.traces_match);

    // mismatched traces: solvability flag reports false
    HNNDecomposition dec2{{0, 1}, 2, Word::parse("A"), Word::parse("B")};
    RandomStream rng(17);
    Representation rho2{{rng.haar_su2(), rng.haar_su2(), Su2::identity()}};
    const GluingReport r2 = check_gluing(dec2, rho2, rng.haar_su2());
    CHECK_FALSE(r2.traces_match);

    // gamma_- = gamma_+^-1: any centralizer element glues, e.g. rho(gamma) itself
    RandomStream rng2(19);
    const Representation rho3 = haar_rep(rng2);
    const GluingReport r3 = check_gluing(kHnn, rho3, evaluate(kHnn.gamma_plus, rho3));
    CHECK(r3.glues);
    CHECK(r3.traces_match);
}
