/**
 * @file experiments.hpp
 * @brief The statistical experiments: ergodicity (orbit time averages vs
 *        relative-window space averages) and volume (series vs Monte Carlo),
 *        plus the Goldman flow command.
 */
#pragma once

#include "fricke/cli/commands.hpp"

namespace fricke::cli {

// ------------------------------------------------------------ ergodicity

struct DictEntry {
    const char* name;
    double (*fn)(const CharPoint&);
};

/// Test-function dictionary: low moments of the fiber coordinates.
inline std::vector<DictEntry> dictionary(Surface s) {
    if (s == Surface::N13)
        return {{"a", [](const CharPoint& p) { return p.a; }},
                {"x", [](const CharPoint& p) { return p.x; }},
                {"z", [](const CharPoint& p) { return p.z; }},
                {"d", [](const CharPoint& p) { return p.d; }},
                {"a2", [](const CharPoint& p) { return p.a * p.a; }},
                {"ax", [](const CharPoint& p) { return p.a * p.x; }},
                {"xz", [](const CharPoint& p) { return p.x * p.z; }},
                {"zd", [](const CharPoint& p) { return p.z * p.d; }},
                {"x2", [](const CharPoint& p) { return p.x * p.x; }},
                {"d2", [](const CharPoint& p) { return p.d * p.d; }}};
    return {{"a", [](const CharPoint& p) { return p.a; }},
            {"b", [](const CharPoint& p) { return p.b; }},
            {"x", [](const CharPoint& p) { return p.x; }},
            {"y", [](const CharPoint& p) { return p.y; }},
            {"z", [](const CharPoint& p) { return p.z; }},
            {"d", [](const CharPoint& p) { return p.d; }},
            {"ab", [](const CharPoint& p) { return p.a * p.b; }},
            {"xz", [](const CharPoint& p) { return p.x * p.z; }},
            {"x2", [](const CharPoint& p) { return p.x * p.x; }},
            {"d2", [](const CharPoint& p) { return p.d * p.d; }}};
}

/// Time averages along an i.i.d. random-twist orbit (the program plus the
/// inverse of each step, drawn uniformly) against space averages over the
/// relative window re-centered on the seed's exact boundary traces. The
/// re-centering makes the space estimator unbiased for the seed's fiber up
/// to O(width^2); z-scores combine orbit batch-mean and space-sample errors.
inline int cmd_ergodicity(Json config, const fs::path& outdir, Json* report_out = nullptr) {
    config = merged_defaults(std::move(config), Json{
        {"surface", "N13"},
        {"program", Json::array({"tau_T", "tau_U", "tau_W"})},
        {"boundary_targets", Json::array({0.0, 0.0, 0.0})},
        {"window", 0.05},
        {"orbit_steps", 1000000},
        {"space_samples", 20000},
        {"batches", 16},
        {"seed", 12345},
    });
    const Surface s = surface_from_name(config["surface"].get<std::string>());
    if (s == Surface::N31) throw std::invalid_argument("ergodicity experiment runs on N13 or N22");
    const auto program = parse_program(s, config["program"]);
    if (program.empty()) throw std::invalid_argument("empty twist program");
    const std::size_t n_steps = config["orbit_steps"].get<std::size_t>();
    if (n_steps == 0) throw std::invalid_argument("zero-length orbit");
    const std::size_t n_space = config["space_samples"].get<std::size_t>();
    const std::size_t n_batch = config["batches"].get<std::size_t>();
    const double width = config["window"].get<double>();

    RelativeWindow win;
    win.width = width;
    for (const auto& v : config["boundary_targets"]) win.targets.push_back(v.get<double>());

    const RandomStream root(config["seed"].get<std::uint64_t>());
    RandomStream seed_rng = root.derive(1);
    RandomStream space_rng = root.derive(2);
    RandomStream walk_rng = root.derive(3);

    // seed representation from the configured window
    const RelativeSample seed = sample_relative(s, win, seed_rng);
    const CharPoint start = coords_from_rep(seed.rep);
    const auto seed_boundary = boundary_traces(s, start);

    // space side: window of the same width, re-centered on the seed's fiber
    RelativeWindow centered;
    centered.width = width;
    centered.targets = seed_boundary;
    const auto dict = dictionary(s);
    std::vector<std::vector<double>> space_vals(dict.size());
    std::int64_t space_proposals = 0;
    for (std::size_t i = 0; i < n_space; ++i) {
        const RelativeSample smp = sample_relative(s, centered, space_rng);
        space_proposals += smp.proposals;
        const CharPoint p = coords_from_rep(smp.rep);
        for (std::size_t f = 0; f < dict.size(); ++f) space_vals[f].push_back(dict[f].fn(p));
    }

    // time side: random symmetric twist walk, batch means
    std::vector<TwistStep> alphabet;
    for (const TwistStep& st : program) {
        alphabet.push_back(st);
        alphabet.push_back({st.twist, !st.inverse});
    }
    const std::size_t batch_len = std::max<std::size_t>(n_steps / n_batch, 1);
    std::vector<std::vector<double>> batch_means(dict.size());
    CharPoint p = start;
    std::vector<KahanSum> acc(dict.size());
    std::size_t in_batch = 0;
    double max_fricke = 0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const TwistStep st = alphabet[walk_rng.uniform_below(alphabet.size())];
        p = project_to_variety(apply_twist(s, st.twist, p, st.inverse));
        const double fr = std::abs(fricke_value(p));
        max_fricke = std::max(max_fricke, fr);
        if (fr > kOrbitFrickeGuard) throw OrbitBlowup(i + 1, fr);
        for (std::size_t f = 0; f < dict.size(); ++f) acc[f].add(dict[f].fn(p));
        if (++in_batch == batch_len) {
            for (std::size_t f = 0; f < dict.size(); ++f) {
                batch_means[f].push_back(acc[f].value() / static_cast<double>(in_batch));
                acc[f] = KahanSum{};
            }
            in_batch = 0;
        }
    }

    Json funcs = Json::array();
    bool all_within = true;
    double max_abs_z = 0;
    for (std::size_t f = 0; f < dict.size(); ++f) {
        const MeanStderr time_ms = mean_stderr(batch_means[f]);
        const MeanStderr space_ms = mean_stderr(space_vals[f]);
        const double se = std::sqrt(time_ms.stderr_ * time_ms.stderr_ + space_ms.stderr_ * space_ms.stderr_);
        const double z = se > 0 ? (time_ms.mean - space_ms.mean) / se : 0.0;
        max_abs_z = std::max(max_abs_z, std::abs(z));
        if (std::abs(z) > 3.0) all_within = false;
        funcs.push_back({{"name", dict[f].name},
                         {"time_mean", time_ms.mean},
                         {"time_stderr", time_ms.stderr_},
                         {"space_mean", space_ms.mean},
                         {"space_stderr", space_ms.stderr_},
                         {"z", z}});
    }

    Json report;
    report["command"] = "ergodicity";
    report["config"] = config;
    report["seed_boundary_traces"] = seed_boundary;
    report["space_acceptance"] = static_cast<double>(n_space) / static_cast<double>(space_proposals);
    report["orbit_steps"] = n_steps;
    report["batches"] = batch_means.empty() ? 0 : batch_means[0].size();
    report["max_fricke_residual"] = max_fricke;
    report["functions"] = funcs;
    report["max_abs_z"] = max_abs_z;
    report["all_within_3_sigma"] = all_within;
    write_json_file(outdir / "ergodicity_report.json", report);
    if (report_out) *report_out = report;
    return 0;
}

// ---------------------------------------------------------------- volume

inline int cmd_volume(Json config, const fs::path& outdir, Json* report_out = nullptr) {
    config = merged_defaults(std::move(config), Json{
        {"k", 4},
        {"tol", 1e-8},
        {"epsilon", 0.15},
        {"samples", 1000000},
        {"workers", 8},
        {"chunks", 256},
        {"seed", 12345},
        {"second_epsilon", 0.0},  // 0 disables the two-bandwidth check
    });
    const int k = config["k"].get<int>();
    const double tol = config["tol"].get<double>();
    const double eps = config["epsilon"].get<double>();
    const std::int64_t samples = config["samples"].get<std::int64_t>();
    const unsigned workers = config["workers"].get<unsigned>();
    const std::int64_t chunks = config["chunks"].get<std::int64_t>();
    const RandomStream rng(config["seed"].get<std::uint64_t>());

    const VolumeSeriesResult series = volume_series(k, tol);
    const double smeared = smeared_series_value(k, eps);
    const double bias_bound = std::abs(smeared - series.partial_sum) + series.truncation_bound + 1e-9;

    const DensityEstimate mc = mc_identity_density(k, eps, samples, rng.derive(1), workers, chunks);
    const double dev_series = std::abs(mc.estimate - series.partial_sum);
    const double dev_smeared = std::abs(mc.estimate - smeared);
    const bool sampler_ok = dev_smeared <= 3.0 * mc.std_error;
    const bool series_ok = dev_series <= 3.0 * mc.std_error + bias_bound;

    Json report;
    report["command"] = "volume";
    report["config"] = config;
    report["haar_normalization"] = "total mass 1";
    report["series"] = {{"value", series.partial_sum},
                        {"terms", series.term_count},
                        {"truncation_bound", series.truncation_bound}};
    report["estimator_expectation"] = smeared;
    report["bias_bound"] = bias_bound;
    report["mc"] = {{"estimate", mc.estimate},
                    {"std_error", mc.std_error},
                    {"hits", mc.hits},
                    {"samples", mc.samples},
                    {"epsilon", eps}};
    report["deviation_from_series"] = dev_series;
    report["deviation_from_expectation"] = dev_smeared;
    report["sampler_consistent_3sigma"] = sampler_ok;
    report["series_agreement"] = series_ok;

    const double eps2 = config["second_epsilon"].get<double>();
    if (eps2 > 0) {
        const DensityEstimate mc2 = mc_identity_density(k, eps2, samples, rng.derive(2), workers, chunks);
        const double smeared2 = smeared_series_value(k, eps2);
        // bias-corrected agreement between the two bandwidths
        const double diff = (mc.estimate - smeared) - (mc2.estimate - smeared2);
        const double se = std::sqrt(mc.std_error * mc.std_error + mc2.std_error * mc2.std_error);
        report["two_bandwidth"] = {{"epsilon", eps2},
                                   {"estimate", mc2.estimate},
                                   {"std_error", mc2.std_error},
                                   {"estimator_expectation", smeared2},
                                   {"bias_corrected_difference", diff},
                                   {"z", se > 0 ? diff / se : 0.0},
                                   {"consistent_3sigma", std::abs(diff) <= 3.0 * se}};
    }

    write_json_file(outdir / "volume_report.json", report);
    if (report_out) *report_out = report;
    return (sampler_ok && series_ok) ? 0 : 1;
}

// ------------------------------------------------------------------ flow

inline int cmd_flow(Json config, const fs::path& outdir, Json* report_out = nullptr) {
    config = merged_defaults(std::move(config), Json{
        {"type", "separating"},
        {"a_side", Json::array({0})},
        {"beta", 2},
        {"gamma", "AA"},
        {"gamma_plus", "AB"},
        {"gamma_minus", "ba"},
        {"seed", 12345},
        {"t_steps", 64},
        {"samples", 200},
    });
    const std::string type = config["type"].get<std::string>();
    const bool separating = type == "separating";
    if (!separating && type != "hnn") throw std::invalid_argument("flow type must be 'separating' or 'hnn'");
    RandomStream rng(config["seed"].get<std::uint64_t>());

    SeparatingDecomposition sep;
    HNNDecomposition hnn;
    if (separating) {
        for (const auto& v : config["a_side"]) sep.a_side.push_back(v.get<int>());
        sep.gamma = Word::parse(config["gamma"].get<std::string>());
    } else {
        for (const auto& v : config["a_side"]) hnn.a_side.push_back(v.get<int>());
        hnn.beta = config["beta"].get<int>();
        hnn.gamma_plus = Word::parse(config["gamma_plus"].get<std::string>());
        hnn.gamma_minus = Word::parse(config["gamma_minus"].get<std::string>());
    }
    const double period = separating ? kPi : 2.0 * kPi;

    auto flow_at = [&](const Representation& rho, double t) {
        return separating ? flow_separating(sep, rho, t) : flow_hnn(hnn, rho, t);
    };

    // trace one sampled flow line into CSV
    const Representation rho0 = haar_rep(rng);
    const int t_steps = config["t_steps"].get<int>();
    CsvWriter csv({"t", "a", "b", "c", "x", "y", "z", "d"}, config);
    for (int i = 0; i <= t_steps; ++i) {
        const double t = period * static_cast<double>(i) / t_steps;
        const auto v = coords_from_rep(flow_at(rho0, t)).to_array();
        csv.row({t, v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
    }
    write_text_file(outdir / "flow.csv", csv.str());

    // statistics over samples
    const int n = config["samples"].get<int>();
    double dev_period = 0, dev_dual = 0, dev_angle = 0;
    int gluing_ok = 0, traces_ok = 0;
    for (int i = 0; i < n; ++i) {
        const Representation rho = haar_rep(rng);
        const auto p0 = coords_from_rep(rho).to_array();
        const auto p1 = coords_from_rep(flow_at(rho, period)).to_array();
        for (int c = 0; c < 7; ++c) dev_period = std::max(dev_period, std::abs(p0[c] - p1[c]));
        dev_dual = std::max(dev_dual, separating ? twist_equals_flow(sep, rho).max_coord_dev
                                                 : twist_equals_flow(hnn, rho).max_coord_dev);
        const Word& gamma = separating ? sep.gamma : hnn.gamma_plus;
        const double t = rng.uniform01() * period;
        dev_angle = std::max(dev_angle, std::abs(angle(evaluate(gamma, flow_at(rho, t)))
                                                 - angle(evaluate(gamma, rho))));
        if (!separating) {
            // with gamma_minus = gamma_plus^-1 (same cut circle read from the
            // two sides), any b in the centralizer glues; test b = rho(gamma)
            const GluingReport g = check_gluing(hnn, rho, evaluate(hnn.gamma_plus, rho));
            gluing_ok += g.glues ? 1 : 0;
            traces_ok += g.traces_match ? 1 : 0;
        }
    }

    Json report;
    report["command"] = "flow";
    report["config"] = config;
    report["period"] = period;
    report["max_period_coord_dev"] = dev_period;
    report["max_twist_vs_flow_dev"] = dev_dual;
    report["max_gamma_angle_drift"] = dev_angle;
    if (!separating) {
        report["gluing_checks_passed"] = gluing_ok;
        report["trace_criterion_passed"] = traces_ok;
        report["samples"] = n;
    }
    const bool ok = dev_period < 1e-9 && dev_dual < 1e-9 && dev_angle < 1e-10;
    report["pass"] = ok;
    write_json_file(outdir / "flow_report.json", report);
    if (report_out) *report_out = report;
    return ok ? 0 : 1;
}

}  // namespace fricke::cli
