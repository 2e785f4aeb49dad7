// Command-line front end: runs, figure datasets, spectrum export, selftest.
#include "dlflame/config.hpp"
#include "dlflame/errors.hpp"
#include "dlflame/figures.hpp"
#include "dlflame/selftest.hpp"
#include "dlflame/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace dlflame;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_numerical = 1;
constexpr int exit_config = 2;

int cmd_run(const fs::path& config_path, const fs::path& out, unsigned workers) {
    const RunConfig cfg = load_config(config_path);
    const auto records = run_sweep(cfg, workers, [](const SweepRecord& r) {
        std::cerr << "point " << r.point.index << (r.ok() ? " done" : " FAILED") << " ("
                  << r.wall_time << " s)\n";
    });
    if (out.empty()) {
        write_records_csv(std::cout, records);
    } else {
        if (out.has_parent_path()) fs::create_directories(out.parent_path());
        std::ofstream f(out);
        if (!f) throw ConfigError("cannot write " + out.string());
        write_records_csv(f, records);
        write_manifest(out, cfg, records);
    }
    int failed = 0;
    for (const auto& r : records) {
        if (!r.ok()) {
            ++failed;
            std::cerr << "error at point " << r.point.index << " (theta " << r.point.theta << ", R/R_c "
                      << r.point.r_over_rc << ", u_rms " << r.point.u_rms << "): " << r.error << '\n';
        }
    }
    return failed ? exit_numerical : exit_ok;
}

int cmd_figure(const std::string& name, const fs::path& out, unsigned workers) {
    std::vector<std::string> names;
    if (name == "all") names = figure_names();
    else names.push_back(name);
    std::size_t failed = 0;
    for (const auto& n : names) {
        const auto res = write_figure(n, out.empty() ? fs::path(".") : out, workers,
                                      [](const std::string& s) { std::cerr << s << '\n'; });
        for (const auto& f : res.files) std::cout << f.string() << '\n';
        failed += res.failed_points;
    }
    if (failed) std::cerr << failed << " sweep point(s) failed; see manifests\n";
    return failed ? exit_numerical : exit_ok;
}

int cmd_export(const fs::path& config_path, const fs::path& out) {
    const RunConfig cfg = load_config(config_path);
    const fs::path dir = out.empty() ? fs::path(".") : out;
    fs::create_directories(dir);
    for (const auto& p : expand(cfg)) {
        const auto params = derive_flame_params(p.theta, 1.0, cfg.overrides);
        const auto channel = channel_from_ratio(params, p.r_over_rc, p.n_modes);
        const auto spec = synthesize(channel.width, p.n_t, p.u_rms, p.seed);
        const auto resp = response_factors(params, spec, cfg.solver.response_form);
        const auto tag = std::to_string(p.index);
        std::ofstream fs_spec(dir / ("spectrum_" + tag + ".csv"));
        write_spectrum_csv(fs_spec, spec);
        std::ofstream fs_resp(dir / ("response_" + tag + ".csv"));
        write_response_csv(fs_resp, resp);
        std::cout << (dir / ("spectrum_" + tag + ".csv")).string() << '\n'
                  << (dir / ("response_" + tag + ".csv")).string() << '\n';
    }
    return exit_ok;
}

int cmd_selftest() {
    const auto results = run_acceptance(std::cout);
    int failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;
    std::cout << (acceptance_criteria - failed) << "/" << acceptance_criteria << " criteria passed\n";
    return failed ? exit_numerical : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Turbulent premixed flame fronts with hydrodynamic instability"};
    app.set_version_flag("--version", std::string(library_version()));
    app.require_subcommand(1);

    fs::path config_path, out;
    unsigned workers = 0;
    std::string fig;

    auto* run = app.add_subcommand("run", "Run a configured sweep and write one CSV row per point");
    run->add_option("--config", config_path, "key = value configuration file")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out, "output CSV (stdout if omitted)");
    run->add_option("--workers", workers, "worker threads, 0 = hardware concurrency");

    auto* figure = app.add_subcommand("figure", "Write the dataset of a figure, one CSV per panel");
    figure->add_option("--figure", fig, "fig1..fig9 or all")->required();
    figure->add_option("--out", out, "output directory");
    figure->add_option("--workers", workers, "worker threads, 0 = hardware concurrency");

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");

    auto* exp = app.add_subcommand("export-spectrum", "Write turbulence spectra and response factors");
    exp->add_option("--config", config_path, "key = value configuration file")->required()->check(CLI::ExistingFile);
    exp->add_option("--out", out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (*run) return cmd_run(config_path, out, workers);
        if (*figure) return cmd_figure(fig, out, workers);
        if (*selftest) return cmd_selftest();
        if (*exp) return cmd_export(config_path, out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_config;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
    return exit_ok;
}
