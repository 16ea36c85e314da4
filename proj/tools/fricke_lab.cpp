/**
 * Batch front-end. Subcommands: verify | orbit | equidistribute |
 * ergodicity | volume | flow. JSON config in, CSV/JSON (and optional SVG)
 * out; every command is deterministic given its config and seed.
 */
#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fricke/cli/commands.hpp"
#include "fricke/cli/experiments.hpp"

namespace {

fricke::cli::Json load_config(const std::string& path) {
    if (path.empty()) return fricke::cli::Json::object();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    fricke::cli::Json j;
    in >> j;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fricke-lab: SU(2) character variety twist dynamics laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    bool svg = false;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "override the config seed");
    app.add_flag("--svg", svg, "emit scatter SVG where supported");

    for (const char* name : {"verify", "orbit", "equidistribute", "ergodicity", "volume", "flow"})
        app.add_subcommand(name);

    CLI11_PARSE(app, argc, argv);

    try {
        fricke::cli::Json config = load_config(config_path);
        if (seed) config["seed"] = *seed;
        const std::string cmd = app.get_subcommands().at(0)->get_name();
        int status = 2;
        if (cmd == "verify") status = fricke::cli::cmd_verify(config, out_dir);
        else if (cmd == "orbit") status = fricke::cli::cmd_orbit(config, out_dir);
        else if (cmd == "equidistribute") status = fricke::cli::cmd_equidistribute(config, out_dir, svg);
        else if (cmd == "ergodicity") status = fricke::cli::cmd_ergodicity(config, out_dir);
        else if (cmd == "volume") status = fricke::cli::cmd_volume(config, out_dir);
        else if (cmd == "flow") status = fricke::cli::cmd_flow(config, out_dir);
        std::fprintf(stderr, "%s: %s (reports in %s)\n", cmd.c_str(),
                     status == 0 ? "ok" : "FAILED", out_dir.c_str());
        return status;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 2;
    }
}
