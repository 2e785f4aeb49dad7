#pragma once

#include "dlflame/linear_response.hpp"
#include "dlflame/spectrum.hpp"
#include "dlflame/thermo.hpp"

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

namespace dlflame {

/// Channel of width R with slip adiabatic walls and the Galerkin truncation N
/// of the stationary front G(x) = sum_{i=1..N} (R / (pi i)) G_i cos(pi i x / R).
struct ChannelSpec {
    double width = 0.0;
    int n_modes = 150;

    [[nodiscard]] double r_over_rc(const FlameParams& p) const { return width / p.r_c; }
};

/// Builds a channel from the scaled width R/R_c.
[[nodiscard]] ChannelSpec channel_from_ratio(const FlameParams& params, double r_over_rc,
                                             int n_modes);

struct SolverSettings {
    double step = 0.05;            ///< virtual-time increment
    double tol = 1e-10;            ///< max-norm of the algebraic residual
    long max_iter = 1'000'000;
    double init_amplitude = 1e-3;  ///< G_i drawn uniformly in [-a, a]
    std::uint64_t init_seed = 0;

    /// Once the relaxation residual drops below `newton_trigger`, Newton
    /// iterations are tried on the same algebraic system. A Newton root is
    /// only accepted when it is a stable fixed point of the relaxation flow,
    /// so the selected branch is the one relaxation would reach.
    bool newton_polish = true;
    double newton_trigger = 1e-6;
    long newton_interval = 2000;
    double stability_margin = 1e-7;

    int extra_seeds = 0;  ///< additional init seeds run by solve() for a spread report
    ResponseForm response_form = ResponseForm::published;
};

struct StationaryState {
    std::vector<double> g;  ///< slope coefficients, g[i-1] is mode i
    double residual_norm = 0.0;
    long iterations = 0;
    int newton_steps = 0;
    bool converged = false;
};

/// A_0 = A_1 = 0, A_m = sum_{i=1..m-1} G_i G_{m-i} for 2 <= m <= 2N.
/// Result has 2N + 1 entries indexed by m.
[[nodiscard]] std::vector<double> convolve_a(std::span<const double> g);

/// B_0 = sum G_i^2, B_l = sum_{i=1..N-l} G_i G_{l+i}, B_N = 0.
/// Result has N + 1 entries indexed by l.
[[nodiscard]] std::vector<double> convolve_b(std::span<const double> g);

/// Time-averaged forcing of the stationary modes by the oscillating front:
/// entry i-1 holds U_{i/2}^2 / D_{i/2}^2 for even i <= 2 N_T, zero otherwise.
[[nodiscard]] std::vector<double> turbulent_forcing(const FlameParams& params,
                                                    const TurbulenceSpectrum& spec,
                                                    const ModeResponse& resp, int n_modes);

/// Left-hand side of the Galerkin balance for every mode:
///   G_i (1 - i R_c/R) - T B_i/(T-1) + c_nl (A_i + A_i^turb),
///   c_nl = (T/(T-1) + (T-1)^2/(4T)) / 2.
/// Throws std::invalid_argument for theta <= 1.
[[nodiscard]] std::vector<double> residual(std::span<const double> g, const FlameParams& params,
                                           const ChannelSpec& channel,
                                           std::span<const double> a_turb);

/// Integrates dG/dxi = residual(G) from a small seeded random state until the
/// residual max-norm reaches `tol` or `max_iter` steps are taken. The linear
/// diagonal is advanced exactly (exponential Euler), the quadratic terms
/// explicitly. Throws NumericalError on non-finite values.
[[nodiscard]] StationaryState relax(const FlameParams& params, const ChannelSpec& channel,
                                    std::span<const double> a_turb, const SolverSettings& settings);

/// U_w/U_f - 1 = T/4 (B_0 + sum U_i^2 / D_i^2).
[[nodiscard]] double flame_velocity(const StationaryState& state, const FlameParams& params,
                                    const TurbulenceSpectrum& spec, const ModeResponse& resp);

struct StationarySolution {
    StationaryState state;
    double velocity = 0.0;
    double velocity_no_dl = 0.0;
    double seed_spread = 0.0;  ///< max |v(seed) - v(init_seed)| over extra seeds
};

/// response_factors -> turbulent_forcing -> relax -> flame_velocity.
[[nodiscard]] StationarySolution solve(const FlameParams& params, const ChannelSpec& channel,
                                       const TurbulenceSpectrum& spec,
                                       const SolverSettings& settings = {});

/// Columns: i, G_i, F_i where F_i = R G_i / (pi i) is the cosine amplitude of G(x).
void write_state_csv(std::ostream& out, const StationaryState& state, const ChannelSpec& channel);

}  // namespace dlflame
