/**
 * @file commands.hpp
 * @brief The batch commands behind the CLI: verify, orbit, equidistribute,
 *        ergodicity, volume, flow. Each is a pure function of
 *        (config, seed): outputs are byte-identical across reruns.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fricke/cli/json_io.hpp"
#include "fricke/char_point.hpp"
#include "fricke/ellipse.hpp"
#include "fricke/goldman.hpp"
#include "fricke/measures.hpp"
#include "fricke/orbit.hpp"
#include "fricke/rng.hpp"
#include "fricke/stats.hpp"
#include "fricke/trace_calculus.hpp"
#include "fricke/twist_maps.hpp"
#include "fricke/word.hpp"

namespace fricke::cli {

namespace fs = std::filesystem;

inline Representation haar_rep(RandomStream& rng) {
    return {{rng.haar_su2(), rng.haar_su2(), rng.haar_su2()}};
}

inline Word random_word(RandomStream& rng, std::size_t max_len) {
    const std::size_t len = rng.uniform_below(max_len + 1);
    std::vector<Letter> ls;
    ls.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        const int g = 1 + static_cast<int>(rng.uniform_below(3));
        ls.push_back(static_cast<Letter>(rng.uniform_below(2) ? g : -g));
    }
    return Word(std::move(ls));
}

inline std::vector<TwistStep> parse_program(Surface s, const Json& arr) {
    std::vector<TwistStep> prog;
    for (const auto& item : arr) {
        std::string name = item.get<std::string>();
        bool inv = false;
        if (name.size() > 3 && name.substr(name.size() - 3) == "^-1") {
            inv = true;
            name = name.substr(0, name.size() - 3);
        }
        prog.push_back({twist_from_name(s, name), inv});
    }
    return prog;
}

inline Json merged_defaults(Json config, const Json& defaults) {
    for (auto it = defaults.begin(); it != defaults.end(); ++it)
        if (!config.contains(it.key())) config[it.key()] = it.value();
    return config;
}

// ---------------------------------------------------------------- verify

struct Check {
    std::string name;
    double value = 0;
    double tolerance = 0;
    bool pass = false;
};

inline int cmd_verify(Json config, const fs::path& outdir, Json* report_out = nullptr) {
    config = merged_defaults(std::move(config), Json{
        {"seed", 12345},
        {"words", 200},
        {"word_len", 16},
        {"reps_per_word", 40},
        {"oracle_reps", 2000},
        {"fricke_samples", 20000},
        {"rotation_points", 200},
        {"flow_samples", 200},
        {"moment_samples", 200000},
        {"inject_fault", false},
    });
    const RandomStream root(config["seed"].get<std::uint64_t>());
    const bool inject = config["inject_fault"].get<bool>();

    std::vector<Check> checks;
    auto push = [&](const std::string& name, double value, double tol) {
        checks.push_back({name, value, tol, value <= tol});
    };
    std::vector<std::string> coverage;

    {  // parse/print round trip and free reduction
        RandomStream rng = root.derive(1);
        int mismatches = 0;
        for (int i = 0; i < 500; ++i) {
            const Word w = random_word(rng, 24);
            if (!(Word::parse(w.str()) == w)) ++mismatches;
        }
        if (!Word::parse("Aa").empty()) ++mismatches;
        push("word_parse_roundtrip", mismatches, 0);
    }

    {  // automorphism certificates
        int failures = 0;
        for (Surface s : {Surface::N22, Surface::N13, Surface::N31})
            for (const auto& e : builtin_twists(s)) {
                if (!e.certify()) ++failures;
                if (!e.inverted().certify()) ++failures;
            }
        push("endo_certificates", failures, 0);
    }

    {  // symbolic trace soundness against direct evaluation
        RandomStream rng = root.derive(2);
        const int n_words = config["words"].get<int>();
        const int n_reps = config["reps_per_word"].get<int>();
        const std::size_t max_len = config["word_len"].get<std::size_t>();
        double dev = 0;
        for (int i = 0; i < n_words; ++i) {
            const Word w = random_word(rng, max_len);
            const TracePolynomial p = trace_of_word(w);
            for (int j = 0; j < n_reps; ++j) {
                const Representation rho = haar_rep(rng);
                dev = std::max(dev, std::abs(p.eval(coords_from_rep(rho).to_array())
                                             - trace(evaluate(w, rho))));
            }
        }
        push("trace_soundness", dev, 1e-9);
    }

    {  // evaluate is a homomorphism; apply_endo commutes with evaluation
        RandomStream rng = root.derive(3);
        double dev_hom = 0, dev_endo = 0;
        for (int i = 0; i < 300; ++i) {
            const Word v = random_word(rng, 16), w = random_word(rng, 16);
            const Representation rho = haar_rep(rng);
            dev_hom = std::max(dev_hom, dist_max(evaluate(v * w, rho), evaluate(v, rho) * evaluate(w, rho)));
            for (Surface s : {Surface::N22, Surface::N13, Surface::N31})
                for (const auto& e : builtin_twists(s))
                    dev_endo = std::max(dev_endo, dist_max(evaluate(apply_endo(e, w), rho),
                                                           evaluate(w, pullback(e, rho))));
        }
        push("evaluate_homomorphism", dev_hom, 1e-12);
        push("endo_evaluation_commutes", dev_endo, 1e-10);
    }

    {  // Fricke relation on representation points
        RandomStream rng = root.derive(4);
        double dev = 0;
        const int n = config["fricke_samples"].get<int>();
        for (int i = 0; i < n; ++i)
            dev = std::max(dev, std::abs(fricke_value(coords_from_rep(haar_rep(rng)))));
        push("fricke_on_representations", dev, 1e-9);
    }

    {  // per-twist: closed-form map vs word-level oracle, fricke & boundary preservation
        const int n = config["oracle_reps"].get<int>();
        for (Surface s : {Surface::N22, Surface::N13, Surface::N31}) {
            for (Twist t : twists_of(s)) {
                const std::string label = std::string(surface_name(s)) + ":" + twist_name(t);
                coverage.push_back(label);
                const EndoF3 endo = twist_endo(s, t);
                const CoordinateMap poly_fwd = induced_map(endo);
                const CoordinateMap poly_inv = induced_map(endo.inverted());
                RandomStream rng = root.derive(100 + static_cast<int>(s) * 8 + static_cast<int>(t));
                double dev_oracle = 0, dev_poly = 0, dev_boundary = 0, dev_fricke = 0;
                for (int i = 0; i < n; ++i) {
                    const Representation rho = haar_rep(rng);
                    const CharPoint p = coords_from_rep(rho);
                    CharPoint q_fast = apply_twist(s, t, p);
                    if (inject && s == Surface::N22) q_fast.d += 1e-3;  // test fixture corruption
                    const CharPoint q_word = coords_from_rep(pullback(endo, rho));
                    const auto qa = q_fast.to_array(), qb = q_word.to_array(),
                               qc = CharPoint::from_array(poly_fwd.eval(p.to_array())).to_array();
                    for (int c = 0; c < 7; ++c) {
                        dev_oracle = std::max(dev_oracle, std::abs(qa[c] - qb[c]));
                        dev_poly = std::max(dev_poly, std::abs(qa[c] - qc[c]));
                    }
                    const CharPoint r_fast = apply_twist(s, t, p, true);
                    const CharPoint r_word = coords_from_rep(pullback(endo.inverted(), rho));
                    const auto ra = r_fast.to_array(), rb = r_word.to_array(),
                               rc = CharPoint::from_array(poly_inv.eval(p.to_array())).to_array();
                    for (int c = 0; c < 7; ++c) {
                        dev_oracle = std::max(dev_oracle, std::abs(ra[c] - rb[c]));
                        dev_poly = std::max(dev_poly, std::abs(ra[c] - rc[c]));
                    }
                    const auto b0 = boundary_traces(s, p), b1 = boundary_traces(s, q_fast);
                    for (std::size_t c = 0; c < b0.size(); ++c)
                        dev_boundary = std::max(dev_boundary, std::abs(b0[c] - b1[c]));
                    dev_fricke = std::max(dev_fricke, std::abs(fricke_value(q_fast)));
                }
                push("twist_vs_word_oracle:" + label, dev_oracle, 1e-8);
                push("twist_vs_induced_polynomials:" + label, dev_poly, 1e-10);
                push("boundary_preserved:" + label, dev_boundary, 1e-10);
                push("fricke_preserved:" + label, dev_fricke, 1e-9);
            }
        }
    }

    {  // rotation normal form
        RandomStream rng = root.derive(5);
        const int want = config["rotation_points"].get<int>();
        double dev_det = 0, dev_tr = 0, dev_aff = 0, dev_quad = 0, factor_max = -1e300;
        int done = 0;
        for (int trial = 0; trial < want * 20 && done < want; ++trial) {
            const CharPoint p = coords_from_rep(haar_rep(rng));
            for (Surface s : {Surface::N22, Surface::N13, Surface::N31})
                for (Twist t : twists_of(s)) {
                    try {
                        const RotationReport r = rotation_check(s, t, p);
                        dev_det = std::max(dev_det, std::abs(r.det_m - 1.0));
                        dev_tr = std::max(dev_tr, std::abs(r.trace_m - (r.nu * r.nu - 2.0)));
                        dev_aff = std::max(dev_aff, r.affine_dev);
                        dev_quad = std::max(dev_quad, r.quad_residual_dev);
                        factor_max = std::max({factor_max, r.fricke_factors[0], r.fricke_factors[1]});
                        ++done;
                    } catch (const DegenerateEllipse&) {
                    }
                }
        }
        push("rotation_det", dev_det, 1e-12);
        push("rotation_trace", dev_tr, 1e-12);
        push("rotation_affine_identity", dev_aff, 1e-8);
        push("ellipse_quadric_residual", dev_quad, 1e-8);
        push("r_factor_nonpositivity", factor_max, 1e-12);
    }

    {  // flows
        RandomStream rng = root.derive(6);
        const int n = config["flow_samples"].get<int>();
        const SeparatingDecomposition sep{{0}, Word::parse("AA")};
        const HNNDecomposition hnn{{0, 1}, 2, Word::parse("AB"), Word::parse("ba")};
        coverage.push_back("flow:separating(gamma=AA)");
        coverage.push_back("flow:hnn(gamma=AB)");
        double dev_pi = 0, dev_2pi = 0, dev_dual_sep = 0, dev_dual_hnn = 0;
        double dev_aside = 0, dev_angle = 0, dev_additive = 0;
        for (int i = 0; i < n; ++i) {
            const Representation rho = haar_rep(rng);
            const double t1 = rng.uniform01() * 2 * kPi, t2 = rng.uniform01() * 2 * kPi;
            {
                const auto p0 = coords_from_rep(rho).to_array();
                const auto pi_flow = coords_from_rep(flow_separating(sep, rho, kPi)).to_array();
                for (int c = 0; c < 7; ++c) dev_pi = std::max(dev_pi, std::abs(p0[c] - pi_flow[c]));
                dev_dual_sep = std::max(dev_dual_sep, twist_equals_flow(sep, rho).max_coord_dev);
                const Representation f1 = flow_separating(sep, rho, t1);
                dev_aside = std::max(dev_aside, dist_max(f1.gens[0], rho.gens[0]));
                dev_angle = std::max(dev_angle, std::abs(angle(evaluate(sep.gamma, f1))
                                                         - angle(evaluate(sep.gamma, rho))));
                const auto once = coords_from_rep(flow_separating(sep, f1, t2)).to_array();
                const auto both = coords_from_rep(flow_separating(sep, rho, t1 + t2)).to_array();
                for (int c = 0; c < 7; ++c) dev_additive = std::max(dev_additive, std::abs(once[c] - both[c]));
            }
            {
                const auto p0 = coords_from_rep(rho).to_array();
                const auto f2pi = coords_from_rep(flow_hnn(hnn, rho, 2 * kPi)).to_array();
                for (int c = 0; c < 7; ++c) dev_2pi = std::max(dev_2pi, std::abs(p0[c] - f2pi[c]));
                dev_dual_hnn = std::max(dev_dual_hnn, twist_equals_flow(hnn, rho).max_coord_dev);
                const Representation f1 = flow_hnn(hnn, rho, t1);
                dev_angle = std::max(dev_angle, std::abs(angle(evaluate(hnn.gamma_plus, f1))
                                                         - angle(evaluate(hnn.gamma_plus, rho))));
                const auto once = coords_from_rep(flow_hnn(hnn, f1, t2)).to_array();
                const auto both = coords_from_rep(flow_hnn(hnn, rho, t1 + t2)).to_array();
                for (int c = 0; c < 7; ++c) dev_additive = std::max(dev_additive, std::abs(once[c] - both[c]));
            }
        }
        push("flow_separating_pi_periodic", dev_pi, 1e-9);
        push("flow_hnn_2pi_periodic", dev_2pi, 1e-9);
        push("dehn_twist_equals_flow_separating", dev_dual_sep, 1e-9);
        push("dehn_twist_equals_flow_hnn", dev_dual_hnn, 1e-9);
        push("flow_a_side_invariance", dev_aside, 1e-12);
        push("flow_gamma_angle_invariant", dev_angle, 1e-10);
        push("flow_additivity", dev_additive, 1e-9);
    }

    {  // Haar sampler moments
        RandomStream rng = root.derive(7);
        const int n = config["moment_samples"].get<int>();
        KahanSum m1, m2;
        for (int i = 0; i < n; ++i) {
            const double t = trace(rng.haar_su2());
            m1.add(t);
            m2.add(t * t);
        }
        const double tol = 5.0 / std::sqrt(static_cast<double>(n));
        push("haar_trace_mean", std::abs(m1.value() / n), tol);
        push("haar_trace_square_mean", std::abs(m2.value() / n - 1.0), tol);
    }

    {  // variation reconstruction identity
        RandomStream rng = root.derive(8);
        double dev = 0;
        for (int i = 0; i < 5000; ++i) {
            const Su2 g = rng.haar_su2();
            dev = std::max(dev, dist_max(g, exp_scaled(variation(g), angle(g))));
        }
        push("variation_reconstruction", dev, 1e-10);
    }

    Json report;
    report["command"] = "verify";
    report["config"] = config;
    bool all_pass = true;
    Json jchecks = Json::array();
    Json failed = Json::array();
    for (const auto& c : checks) {
        jchecks.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
        if (!c.pass) {
            all_pass = false;
            failed.push_back(c.name);
        }
    }
    report["checks"] = jchecks;
    report["failed"] = failed;
    report["coverage"] = coverage;
    report["pass"] = all_pass;
    write_json_file(outdir / "verify_report.json", report);
    if (report_out) *report_out = report;
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------- orbit

inline int cmd_orbit(Json config, const fs::path& outdir, Json* report_out = nullptr) {
    config = merged_defaults(std::move(config), Json{
        {"surface", "N13"},
        {"program", Json::array({"tau_T"})},
        {"steps", 10000},
        {"seed", 12345},
    });
    const Surface s = surface_from_name(config["surface"].get<std::string>());
    const auto program = parse_program(s, config["program"]);
    const std::size_t steps = config["steps"].get<std::size_t>();
    RandomStream rng(config["seed"].get<std::uint64_t>());

    CharPoint start;
    if (config.contains("start")) {
        std::array<double, 7> arr{};
        for (int i = 0; i < 7; ++i) arr[i] = config["start"][i].get<double>();
        start = CharPoint::from_array(arr);
    } else {
        start = coords_from_rep(haar_rep(rng));
    }

    const auto points = orbit(s, program, start, steps);

    CsvWriter csv({"step", "a", "b", "c", "x", "y", "z", "d", "fricke_residual"}, config);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto v = points[i].to_array();
        csv.row_with_index(i, {v[0], v[1], v[2], v[3], v[4], v[5], v[6], fricke_value(points[i])});
    }
    write_text_file(outdir / "orbit.csv", csv.str());

    double max_fricke = 0;
    for (const auto& p : points) max_fricke = std::max(max_fricke, std::abs(fricke_value(p)));

    Json report;
    report["command"] = "orbit";
    report["config"] = config;
    report["points"] = points.size();
    report["max_fricke_residual"] = max_fricke;

    // single-twist orbits stay on the invariant ellipse of the start point
    if (program.size() == 1) {
        try {
            const EllipseForm e = ellipse_form(s, program[0].twist, start);
            const auto ops_proj = [&](const CharPoint& p) {
                return ellipse_detail::plane_ops(s, program[0].twist).proj(p);
            };
            double max_quad_dev = 0;
            for (const auto& p : points) {
                const auto pr = ops_proj(p);
                max_quad_dev = std::max(max_quad_dev,
                                        std::abs(e.quad(pr[0] - e.center[0], pr[1] - e.center[1]) - e.residual));
            }
            report["quadric"] = {{"nu", e.nu},
                                 {"residual", e.residual},
                                 {"max_on_quadric_deviation", max_quad_dev}};
        } catch (const DegenerateEllipse& ex) {
            report["quadric"] = {{"degenerate", ex.what()}};
        }
    }
    write_json_file(outdir / "orbit_report.json", report);
    if (report_out) *report_out = report;
    return 0;
}

// ------------------------------------------------------- equidistribute

inline int cmd_equidistribute(Json config, const fs::path& outdir, bool svg = false,
                              Json* report_out = nullptr) {
    config = merged_defaults(std::move(config), Json{
        {"surface", "N13"},
        {"twist", "tau_T"},
        {"steps", 10000},
        {"seed", 12345},
        {"max_tries", 64},
        {"resonance_qmax", 50},
        {"resonance_tol", 1e-6},
    });
    const Surface s = surface_from_name(config["surface"].get<std::string>());
    const Twist t = twist_from_name(s, config["twist"].get<std::string>());
    const std::size_t n = config["steps"].get<std::size_t>();
    const long qmax = config["resonance_qmax"].get<long>();
    const double rtol = config["resonance_tol"].get<double>();
    RandomStream rng(config["seed"].get<std::uint64_t>());

    CharPoint start;
    EllipseForm form;
    RationalApprox reso;
    bool have = false;
    if (config.contains("start")) {
        std::array<double, 7> arr{};
        for (int i = 0; i < 7; ++i) arr[i] = config["start"][i].get<double>();
        start = CharPoint::from_array(arr);
        form = ellipse_form(s, t, start);  // DegenerateEllipse propagates
        const double theta = 2.0 * std::acos(std::clamp(form.nu / 2.0, -1.0, 1.0));
        reso = nearest_rational(theta / kPi, qmax, rtol);
        have = true;
    } else {
        const int tries = config["max_tries"].get<int>();
        for (int i = 0; i < tries && !have; ++i) {
            const CharPoint p = coords_from_rep(haar_rep(rng));
            try {
                const EllipseForm e = ellipse_form(s, t, p);
                const double theta = 2.0 * std::acos(std::clamp(e.nu / 2.0, -1.0, 1.0));
                const RationalApprox r = nearest_rational(theta / kPi, qmax, rtol);
                if (r.resonant) continue;  // pre-screen: resample
                start = p;
                form = e;
                reso = r;
                have = true;
            } catch (const DegenerateEllipse&) {
            }
        }
        if (!have) throw DegenerateEllipse("no screened start point found");
    }

    // normal coordinates: w = (eta + (nu/2) zeta, sqrt(1 - nu^2/4) zeta)
    // turn the affine action into a true rotation; phase = atan2(w2, w1)
    const double nu = form.nu;
    const double srt = std::sqrt(1.0 - nu * nu / 4.0);
    const auto ops = ellipse_detail::plane_ops(s, t);
    auto phase01 = [&](const CharPoint& p) {
        const auto pr = ops.proj(p);
        const double eta = pr[0] - form.center[0], zeta = pr[1] - form.center[1];
        const double w1 = eta + 0.5 * nu * zeta, w2 = srt * zeta;
        double u = std::atan2(w2, w1) / (2.0 * kPi);
        u -= std::floor(u);
        return u;
    };

    // signed rotation angle from the linear part in normal coordinates
    const auto aff = ellipse_detail::restricted_affine(s, t, start);
    const double mw11 = aff.M[0][0] + 0.5 * nu * aff.M[1][0];
    const double mw21 = srt * aff.M[1][0];
    const double theta_signed = std::atan2(mw21, mw11);

    std::vector<double> phases;
    std::vector<std::pair<double, double>> plane_pts;
    phases.reserve(n + 1);
    CharPoint p = start;
    for (std::size_t i = 0; i <= n; ++i) {
        phases.push_back(phase01(p));
        const auto pr = ops.proj(p);
        plane_pts.emplace_back(pr[0], pr[1]);
        if (i < n) p = apply_twist(s, t, p);
    }

    std::vector<double> reference;
    reference.reserve(phases.size());
    const double step01 = theta_signed / (2.0 * kPi);
    for (std::size_t i = 0; i < phases.size(); ++i) {
        double u = phases[0] + step01 * static_cast<double>(i);
        u -= std::floor(u);
        reference.push_back(u);
    }

    const double dn = star_discrepancy(phases);
    const double dn_ref = star_discrepancy(reference);
    const double ks = ks_uniform(phases);

    // distinct phase cells (periodic orbits visit finitely many points)
    std::vector<long long> cells;
    cells.reserve(phases.size());
    for (double u : phases) cells.push_back(static_cast<long long>(std::floor(u * 1e9)));
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

    Json report;
    report["command"] = "equidistribute";
    report["config"] = config;
    report["nu"] = nu;
    report["theta"] = 2.0 * std::acos(std::clamp(nu / 2.0, -1.0, 1.0));
    report["theta_signed"] = theta_signed;
    report["theta_over_pi"] = report["theta"].get<double>() / kPi;
    report["resonant"] = reso.resonant;
    report["nearest_rational"] = {{"p", reso.p}, {"q", reso.q}, {"error", reso.error}};
    report["samples"] = phases.size();
    report["star_discrepancy"] = dn;
    report["star_discrepancy_reference"] = dn_ref;
    report["ks_uniform"] = ks;
    report["distinct_phase_cells"] = cells.size();
    report["start"] = start.to_array();
    write_json_file(outdir / "equidistribute_report.json", report);

    if (svg) {
        const std::string title = std::string("orbit in the (") + ops.labels[0] + ", " + ops.labels[1]
                                  + ") plane, nu=" + fmt17(nu);
        write_text_file(outdir / "equidistribute.svg", scatter_svg(plane_pts, title));
    }
    if (report_out) *report_out = report;
    return 0;
}

}  // namespace fricke::cli
