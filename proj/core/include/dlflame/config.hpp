#pragma once

#include "dlflame/linear_response.hpp"
#include "dlflame/pde_integrator.hpp"
#include "dlflame/stationary_solver.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dlflame {

enum class RunMode {
    full,        ///< stationary solver with instability and turbulence
    no_dl,       ///< oscillating response only
    analytic,    ///< closed forms: curved flame (velocity), single harmonic (velocity_no_dl)
    pde_oracle,  ///< direct time integration at reduced size
};

[[nodiscard]] const char* to_string(RunMode mode);
[[nodiscard]] RunMode parse_run_mode(std::string_view name);

/// Flat key = value configuration. Any of theta, r_over_rc, u_rms, n_modes
/// and n_t may be a comma-separated list or a start:stop:step range; the
/// lists span a Cartesian sweep in that nesting order (theta outermost).
/// '#' starts a comment.
struct RunConfig {
    std::vector<double> theta{7.0};
    std::vector<double> r_over_rc{5.0};
    std::vector<double> u_rms{0.5};
    std::vector<int> n_modes{150};
    std::vector<int> n_t{150};
    std::uint64_t seed = 0;
    RunMode mode = RunMode::full;
    SolverSettings solver;
    PdeRunSettings pde;

    // Optional overrides of the thermo closure.
    FlameOverrides overrides;
};

/// Throws ConfigError with the offending line on malformed input.
[[nodiscard]] RunConfig parse_config(std::string_view text);
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// Canonical key = value rendering; parse_config(render_config(c)) == c.
[[nodiscard]] std::string render_config(const RunConfig& config);

struct SweepPoint {
    std::size_t index = 0;
    double theta = 0.0;
    double r_over_rc = 0.0;
    double u_rms = 0.0;
    int n_modes = 0;
    int n_t = 0;
    std::uint64_t seed = 0;  ///< child seed
};

/// splitmix64 of (seed, index); sweep results never depend on execution order.
[[nodiscard]] std::uint64_t child_seed(std::uint64_t seed, std::size_t index);

[[nodiscard]] std::vector<SweepPoint> expand(const RunConfig& config);

}  // namespace dlflame
