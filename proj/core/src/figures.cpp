#include "dlflame/figures.hpp"

#include "dlflame/baselines.hpp"
#include "dlflame/csv.hpp"
#include "dlflame/errors.hpp"
#include "dlflame/sweep.hpp"

#include <cmath>
#include <fstream>

namespace dlflame {

namespace {

std::vector<double> range(double start, double stop, double step) {
    std::vector<double> v;
    const long n = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < n; ++i) v.push_back(start + i * step);
    return v;
}

// Channel-width grids: dense for closed forms, coarser for the nonlinear solver.
const std::vector<double>& analytic_widths() {
    static const auto v = range(0.05, 8.0, 0.05);
    return v;
}
const std::vector<double>& solver_widths() {
    static const auto v = range(0.25, 6.0, 0.25);
    return v;
}

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    return f;
}

struct Context {
    std::filesystem::path dir;
    unsigned workers;
    const std::function<void(const std::string&)>& log;
    FigureOutput out;

    void note(const std::string& s) const {
        if (log) log(s);
    }

    void sweep_panel(const std::string& file, const RunConfig& cfg, const std::string& what) {
        const auto path = dir / file;
        note("computing " + file + " (" + std::to_string(expand(cfg).size()) + " points)");
        const auto records = run_sweep(cfg, workers);
        for (const auto& r : records) {
            if (!r.ok()) {
                ++out.failed_points;
                note("point " + std::to_string(r.point.index) + " failed: " + r.error);
            }
        }
        auto f = open_csv(path);
        write_records_csv(f, records);
        write_manifest(path, cfg, records, what);
        out.files.push_back(path);
    }

    // Closed-form tables: columns theta, u_rms, n_t, r_over_rc, M, velocity.
    template <typename Fn>
    void analytic_panel(const std::string& file, RunConfig cfg, const std::string& what, Fn&& fn) {
        const auto path = dir / file;
        note("computing " + file);
        auto f = open_csv(path);
        csv::Writer w(f, {"theta", "u_rms", "n_t", "r_over_rc", "M", "velocity"});
        for (const auto& p : expand(cfg)) {
            w.cell(p.theta).cell(p.u_rms).cell(p.n_t).cell(p.r_over_rc).cell(curved_flame_mode(p.r_over_rc));
            w.cell(fn(p));
            w.end_row();
        }
        write_manifest(path, cfg, {}, what);
        out.files.push_back(path);
    }
};

RunConfig base(RunMode mode, std::vector<double> theta, std::vector<double> widths,
               std::vector<double> u, int n_t) {
    RunConfig c;
    c.mode = mode;
    c.theta = std::move(theta);
    c.r_over_rc = std::move(widths);
    c.u_rms = std::move(u);
    c.n_t = {n_t};
    c.n_modes = {150};
    return c;
}

double multi_harmonic_no_dl(const SweepPoint& p) {
    const auto params = derive_flame_params(p.theta);
    const auto ch = channel_from_ratio(params, p.r_over_rc, 1);
    return turbulent_velocity_no_dl(params, synthesize(ch.width, p.n_t, p.u_rms, p.seed));
}

double single_harmonic_no_dl(const SweepPoint& p) {
    return single_harmonic_velocity(derive_flame_params(p.theta), p.r_over_rc, p.u_rms);
}

}  // namespace

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names = {"fig1", "fig2", "fig3", "fig4", "fig5",
                                                   "fig6", "fig7", "fig8", "fig9"};
    return names;
}

FigureOutput write_figure(std::string_view name, const std::filesystem::path& out_dir,
                          unsigned workers, const std::function<void(const std::string&)>& log) {
    bool known = false;
    for (const auto& n : figure_names()) known = known || n == name;
    if (!known) throw ConfigError("unknown figure '" + std::string(name) + "'");
    std::filesystem::create_directories(out_dir);

    Context ctx{out_dir, workers, log, {}};
    const std::vector<double> thetas = {5.0, 7.0, 9.0};

    if (name == "fig1") {
        ctx.analytic_panel("fig1.csv", base(RunMode::analytic, thetas, analytic_widths(), {0.0}, 0),
                           "curved stationary flame without turbulence",
                           [](const SweepPoint& p) { return curved_flame_velocity(p.theta, p.r_over_rc); });
    } else if (name == "fig2") {
        ctx.analytic_panel("fig2a.csv", base(RunMode::analytic, thetas, analytic_widths(), {0.5}, 1),
                           "single harmonic, no instability, u_rms = 0.5", single_harmonic_no_dl);
        ctx.analytic_panel("fig2b.csv",
                           base(RunMode::analytic, thetas, analytic_widths(), {0.2, 0.5, 1.0}, 1),
                           "single harmonic, no instability, several intensities", single_harmonic_no_dl);
    } else if (name == "fig3") {
        ctx.analytic_panel("fig3a.csv", base(RunMode::no_dl, thetas, analytic_widths(), {0.5}, 150),
                           "150 harmonics, no instability, u_rms = 0.5", multi_harmonic_no_dl);
        ctx.analytic_panel("fig3b.csv",
                           base(RunMode::no_dl, thetas, analytic_widths(), {0.2, 0.5, 1.0}, 150),
                           "150 harmonics, no instability, several intensities", multi_harmonic_no_dl);
    } else if (name == "fig4") {
        const auto cfg = base(RunMode::full, {7.0}, {5.0}, {0.5}, 150);
        const auto params = derive_flame_params(7.0);
        const auto channel = channel_from_ratio(params, 5.0, 150);
        const auto spec = synthesize(channel.width, 150, 0.5, cfg.seed);
        ctx.note("computing fig4.csv");
        const auto sol = solve(params, channel, spec, cfg.solver);
        if (!sol.state.converged) ++ctx.out.failed_points;
        const auto path = out_dir / "fig4.csv";
        auto f = open_csv(path);
        write_state_csv(f, sol.state, channel);
        SweepRecord rec;
        rec.velocity = sol.velocity;
        rec.residual_norm = sol.state.residual_norm;
        rec.iterations = sol.state.iterations;
        rec.converged = sol.state.converged;
        write_manifest(path, cfg, std::span<const SweepRecord>(&rec, 1),
                       "stationary slope spectrum G_i and cosine amplitudes F_i");
        ctx.out.files.push_back(path);
    } else if (name == "fig5") {
        const char* panels[] = {"fig5a.csv", "fig5b.csv", "fig5c.csv"};
        for (int i = 0; i < 3; ++i) {
            ctx.sweep_panel(panels[i],
                            base(RunMode::full, {thetas[i]}, solver_widths(), {0.2, 0.5, 0.7, 1.0}, 150),
                            "full solver, fixed theta, several intensities");
        }
    } else if (name == "fig6") {
        auto u = range(0.05, 1.0, 0.05);
        u.insert(u.begin(), 0.01);
        ctx.sweep_panel("fig6.csv", base(RunMode::full, {7.0}, {5.0}, u, 150),
                        "R = 5 R_c, with (velocity) and without (velocity_no_dl) the instability");
    } else if (name == "fig7") {
        const char* panels[] = {"fig7a.csv", "fig7b.csv", "fig7c.csv", "fig7d.csv"};
        const double us[] = {0.2, 0.5, 0.7, 1.0};
        for (int i = 0; i < 4; ++i) {
            ctx.sweep_panel(panels[i], base(RunMode::full, thetas, solver_widths(), {us[i]}, 150),
                            "full solver, fixed intensity, several theta");
        }
    } else if (name == "fig8") {
        const char* panels[] = {"fig8a.csv", "fig8b.csv", "fig8c.csv"};
        const double us[] = {0.2, 0.5, 1.0};
        for (int i = 0; i < 3; ++i) {
            ctx.sweep_panel(panels[i], base(RunMode::full, thetas, solver_widths(), {us[i]}, 1),
                            "full solver, single turbulent harmonic");
        }
    } else if (name == "fig9") {
        auto cfg = base(RunMode::full, {7.0}, solver_widths(), {0.5}, 150);
        cfg.n_t = {1, 5, 30, 150};
        ctx.sweep_panel("fig9.csv", cfg, "full solver, theta = 7, u_rms = 0.5, several N_T");
    }
    return ctx.out;
}

}  // namespace dlflame
