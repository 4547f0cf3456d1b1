#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ptspec/cli.hpp"

using namespace ptspec::cli;

int main(int argc, char** argv) {
    CLI::App app{"Spectra of PT-symmetric oscillators on shifted complex contours"};
    app.require_subcommand(1, 1);

    std::string config_path;
    Overrides ov;
    std::string out, format;
    std::size_t npoints = 0;
    double alpha = 0.0, shift = 0.0, tol = 0.0;

    for (const char* name : {"spectrum", "verify", "scan", "wavefunction"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--out", out, "output file (default: stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--npoints", npoints, "grid points");
        sub->add_option("--alpha", alpha, "alpha (angular: ell = alpha - 1/2)");
        sub->add_option("--shift", shift, "contour shift c or eps");
        sub->add_option("--tol", tol, "verification tolerance");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_code::ok : exit_code::config;
    }
    CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--out")) ov.out = out;
    if (sub->count("--format")) ov.format = format;
    if (sub->count("--npoints")) ov.npoints = npoints;
    if (sub->count("--alpha")) ov.alpha = alpha;
    if (sub->count("--shift")) ov.shift = shift;
    if (sub->count("--tol")) ov.tol = tol;

    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config(config_path);
        cfg.command = parse_command(sub->get_name());
        apply_overrides(cfg, ov);
    } catch (const ptspec::Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_code::config;
    }

    std::string error;
    const CommandOutput result = run(cfg, error);
    if (result.exit_code != exit_code::ok && result.exit_code != exit_code::verify_failed) {
        std::cerr << error << '\n';
        return result.exit_code;
    }
    if (cfg.output_path.empty()) {
        std::cout << result.text;
    } else {
        std::ofstream f(cfg.output_path, std::ios::binary);
        if (!f || !(f << result.text)) {
            std::cerr << "error: cannot write '" << cfg.output_path << "'\n";
            return exit_code::failure;
        }
    }
    return result.exit_code;
}
