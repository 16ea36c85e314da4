/**
 * @file goldman.hpp
 * @brief Goldman twist flows for separating and HNN decompositions of the
 *        rank-3 surface groups, and the Dehn-twist-equals-time-f-flow check.
 *
 * Separating circle gamma: the flow conjugates the B-side generator images
 * by zeta_t = exp(t F(rho(gamma))) and is pi-periodic on characters (zeta_pi
 * = -I acts trivially by conjugation). Non-separating circle with stable
 * letter beta: the flow left-multiplies the beta image by zeta_t and is
 * 2 pi-periodic. In both cases the Dehn twist is the flow at time
 * f(rho(gamma)) because g = exp(f(g) F(g)).
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fricke/char_point.hpp"
#include "fricke/su2.hpp"
#include "fricke/word.hpp"

namespace fricke {

/// Cut along a separating circle: generators split into an A side and a
/// B side; gamma is a word over the A-side generators.
struct SeparatingDecomposition {
    std::vector<int> a_side;  // generator indices (0-based)
    Word gamma;

    std::vector<int> b_side(std::size_t arity = 3) const {
        std::vector<int> out;
        for (int i = 0; i < static_cast<int>(arity); ++i)
            if (std::find(a_side.begin(), a_side.end(), i) == a_side.end()) out.push_back(i);
        return out;
    }
};

/// Cut along a non-separating circle: one generator is the stable letter
/// beta, the rest are A-side; gamma_plus / gamma_minus are the attaching
/// words (over the A-side generators). The relator condition
/// rho(gamma_-)^-1 = b rho(gamma_+) b^-1 is the gluing equation checked by
/// check_gluing.
struct HNNDecomposition {
    std::vector<int> a_side;
    int beta = 2;
    Word gamma_plus;
    Word gamma_minus;
};

inline Su2 flow_element(const Su2& gamma_image, double t) {
    return exp_scaled(variation(gamma_image), t);  // throws CentralElementError at +-I
}

/// A-side images unchanged, B-side conjugated by zeta_t(rho).
inline Representation flow_separating(const SeparatingDecomposition& dec, const Representation& rho,
                                      double t) {
    const Su2 zeta = flow_element(evaluate(dec.gamma, rho), t);
    Representation out = rho;
    for (int i : dec.b_side(rho.arity())) out.gens[i] = conjugate(zeta, rho.gens[i]);
    return out;
}

/// A-side images unchanged, beta image left-multiplied by zeta_t(rho).
inline Representation flow_hnn(const HNNDecomposition& dec, const Representation& rho, double t) {
    const Su2 zeta = flow_element(evaluate(dec.gamma_plus, rho), t);
    Representation out = rho;
    out.gens[dec.beta] = zeta * rho.gens[dec.beta];
    return out;
}

/// Word-level Dehn twist about the separating circle: conjugate the B side
/// by rho(gamma).
inline Representation dehn_twist_separating(const SeparatingDecomposition& dec, const Representation& rho) {
    const Su2 g = evaluate(dec.gamma, rho);
    Representation out = rho;
    for (int i : dec.b_side(rho.arity())) out.gens[i] = conjugate(g, rho.gens[i]);
    return out;
}

/// Word-level Dehn twist about the HNN circle: left-multiply beta by
/// rho(gamma).
inline Representation dehn_twist_hnn(const HNNDecomposition& dec, const Representation& rho) {
    Representation out = rho;
    out.gens[dec.beta] = evaluate(dec.gamma_plus, rho) * rho.gens[dec.beta];
    return out;
}

struct FlowTwistReport {
    double time = 0;           // f(rho(gamma))
    double max_coord_dev = 0;  // character coordinates, flow vs word-level twist
};

template <typename Dec, typename FlowFn, typename TwistFn>
inline FlowTwistReport twist_equals_flow_impl(const Dec& dec, const Representation& rho,
                                              const Word& gamma, FlowFn&& flow, TwistFn&& twist) {
    const double f = angle(evaluate(gamma, rho));
    const CharPoint via_flow = coords_from_rep(flow(dec, rho, f));
    const CharPoint via_twist = coords_from_rep(twist(dec, rho));
    double dev = 0;
    const auto u = via_flow.to_array(), v = via_twist.to_array();
    for (int i = 0; i < 7; ++i) dev = std::max(dev, std::abs(u[i] - v[i]));
    return {f, dev};
}

inline FlowTwistReport twist_equals_flow(const SeparatingDecomposition& dec, const Representation& rho) {
    return twist_equals_flow_impl(dec, rho, dec.gamma,
                                  [](const auto& d, const auto& r, double t) { return flow_separating(d, r, t); },
                                  [](const auto& d, const auto& r) { return dehn_twist_separating(d, r); });
}

inline FlowTwistReport twist_equals_flow(const HNNDecomposition& dec, const Representation& rho) {
    return twist_equals_flow_impl(dec, rho, dec.gamma_plus,
                                  [](const auto& d, const auto& r, double t) { return flow_hnn(d, r, t); },
                                  [](const auto& d, const auto& r) { return dehn_twist_hnn(d, r); });
}

struct GluingReport {
    bool glues = false;        // rho(gamma_-)^-1 == b rho(gamma_+) b^-1 within 1e-10
    bool traces_match = false; // solvability criterion tr rho(gamma_-) == tr rho(gamma_+)
    double deviation = 0;
};

/// Eq. gluing check: does b realize the identification of the two cut
/// boundary circles? rho_A supplies images for the A-side generators (the
/// beta slot in rho_A is ignored).
inline GluingReport check_gluing(const HNNDecomposition& dec, const Representation& rho_a, const Su2& b) {
    const Su2 gp = evaluate(dec.gamma_plus, rho_a);
    const Su2 gm = evaluate(dec.gamma_minus, rho_a);
    GluingReport rep;
    rep.deviation = dist_max(gm.inverse(), b * gp * b.inverse());
    rep.glues = rep.deviation < 1e-10;
    rep.traces_match = std::abs(trace(gm) - trace(gp)) < 1e-10;
    return rep;
}

}  // namespace fricke
