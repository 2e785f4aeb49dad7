#include "dlflame/sweep.hpp"

#include "dlflame/baselines.hpp"
#include "dlflame/csv.hpp"
#include "dlflame/errors.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <thread>

#ifndef DLFLAME_VERSION
#define DLFLAME_VERSION "unknown"
#endif

namespace dlflame {

const char* library_version() { return DLFLAME_VERSION; }

SweepRecord run_point(const RunConfig& config, const SweepPoint& point) {
    SweepRecord rec;
    rec.point = point;
    rec.mode = config.mode;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const FlameParams params = derive_flame_params(point.theta, 1.0, config.overrides);
        const ChannelSpec channel = channel_from_ratio(params, point.r_over_rc, point.n_modes);
        const TurbulenceSpectrum spec = synthesize(channel.width, point.n_t, point.u_rms, point.seed);
        switch (config.mode) {
            case RunMode::full: {
                SolverSettings s = config.solver;
                s.init_seed = point.seed;
                const auto sol = solve(params, channel, spec, s);
                rec.velocity = sol.velocity;
                rec.velocity_no_dl = sol.velocity_no_dl;
                rec.residual_norm = sol.state.residual_norm;
                rec.iterations = sol.state.iterations;
                rec.converged = sol.state.converged;
                if (!rec.converged) {
                    rec.error = "not converged after " + std::to_string(rec.iterations) +
                                " iterations, residual " + csv::format_double(rec.residual_norm);
                }
                break;
            }
            case RunMode::no_dl:
                rec.velocity = turbulent_velocity_no_dl(params, spec, config.solver.response_form);
                rec.velocity_no_dl = rec.velocity;
                rec.converged = true;
                break;
            case RunMode::analytic:
                rec.velocity = curved_flame_velocity(point.theta, point.r_over_rc);
                rec.velocity_no_dl = single_harmonic_velocity(params, point.r_over_rc, point.u_rms);
                rec.converged = true;
                break;
            case RunMode::pde_oracle: {
                PdeRunSettings s = config.pde;
                s.init_seed = point.seed;
                const auto res = run_pde(params, channel, spec, s);
                rec.velocity = res.velocity;
                rec.velocity_no_dl = turbulent_velocity_no_dl(params, spec, config.solver.response_form);
                rec.iterations = res.steps;
                rec.converged = true;
                break;
            }
        }
    } catch (const NumericalError& e) {
        rec.error = e.what();
    } catch (const std::invalid_argument& e) {
        rec.error = e.what();
    }
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::vector<SweepRecord> run_sweep(const RunConfig& config, unsigned workers,
                                   const std::function<void(const SweepRecord&)>& on_done) {
    const auto points = expand(config);
    std::vector<SweepRecord> out(points.size());
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, std::max<std::size_t>(points.size(), 1));

    std::atomic<std::size_t> next{0};
    std::mutex report;
    auto work = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            out[i] = run_point(config, points[i]);
            if (on_done) {
                std::lock_guard lock(report);
                on_done(out[i]);
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }
    return out;
}

void write_records_csv(std::ostream& out, std::span<const SweepRecord> records) {
    csv::Writer w(out, {"index", "mode", "theta", "r_over_rc", "u_rms", "n_modes", "n_t", "seed",
                        "velocity", "velocity_no_dl", "residual_norm", "iterations", "converged",
                        "status"});
    for (const auto& r : records) {
        w.cell(static_cast<unsigned long long>(r.point.index))
            .cell(std::string_view(to_string(r.mode)))
            .cell(r.point.theta)
            .cell(r.point.r_over_rc)
            .cell(r.point.u_rms)
            .cell(r.point.n_modes)
            .cell(r.point.n_t)
            .cell(static_cast<unsigned long long>(r.point.seed))
            .cell(r.ok() ? r.velocity : std::nan(""))
            .cell(r.ok() ? r.velocity_no_dl : std::nan(""))
            .cell(r.residual_norm)
            .cell(static_cast<long long>(r.iterations))
            .cell(r.converged)
            .cell(std::string_view(r.ok() ? "ok" : "error"));
        w.end_row();
    }
}

void write_manifest(const std::filesystem::path& output, const RunConfig& config,
                    std::span<const SweepRecord> records, const std::string& description) {
    nlohmann::json j;
    j["artifact"] = "dlflame";
    j["version"] = library_version();
    j["output"] = output.filename().string();
    if (!description.empty()) j["description"] = description;
    j["config"] = render_config(config);
    j["master_seed"] = config.seed;
    j["tolerances"] = {{"tol", config.solver.tol},
                       {"step", config.solver.step},
                       {"max_iter", config.solver.max_iter},
                       {"newton_polish", config.solver.newton_polish},
                       {"response_form", to_string(config.solver.response_form)},
                       {"pde_dt", config.pde.dt}};
    auto& pts = j["points"] = nlohmann::json::array();
    double total = 0.0;
    for (const auto& r : records) {
        nlohmann::json p = {{"index", r.point.index}, {"seed", r.point.seed}, {"wall_time", r.wall_time}};
        if (!r.ok()) p["error"] = r.error;
        pts.push_back(std::move(p));
        total += r.wall_time;
    }
    j["total_wall_time"] = total;
    std::filesystem::path path = output;
    path += ".manifest.json";
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << j.dump(2) << '\n';
}

}  // namespace dlflame
