#pragma once

#include "dlflame/thermo.hpp"

namespace dlflame {

/// Velocity of the smooth curved stationary flame without turbulence,
/// U_w/U_f - 1 = 2T(T-1)^2/(T^3+T^2+3T-1) x(1-x), x = M R_c/R, with M the
/// positive integer maximizing x(1-x) (ties to the smaller M). Zero for
/// R/R_c <= 1. Throws std::invalid_argument for theta <= 1.
[[nodiscard]] double curved_flame_velocity(double theta, double r_over_rc);

/// Integer M selected by curved_flame_velocity (0 when R/R_c <= 1).
[[nodiscard]] int curved_flame_mode(double r_over_rc);

/// Upper bound of curved_flame_velocity over R: T(T-1)^2 / (2(T^3+T^2+3T-1)).
[[nodiscard]] double curved_flame_limit(double theta);

/// Single turbulent harmonic, no instability feedback:
///   T u^2 / [(1 + pi C_2 L_f/R)^2 + ((T-1)/2 (1 - R_c/R) - (T+1)/(2T)(1 + pi C_1 L_f/R))^2].
/// theta is taken from params (theta >= 1 with overrides allowed).
[[nodiscard]] double single_harmonic_velocity(const FlameParams& params, double r_over_rc,
                                              double u_rms);

/// R -> infinity limit of single_harmonic_velocity: 4T^3/(4T^2 + (T^2-2T-1)^2) u^2.
[[nodiscard]] double wide_tube_limit(double theta, double u_rms);

/// Zero-expansion weak-turbulence law u^2/2.
[[nodiscard]] double clavin_williams(double u_rms);

/// Three-dimensional estimate: twice the two-dimensional increase.
[[nodiscard]] double three_d_estimate(double two_d_velocity);

struct SubgridScales {
    double integral_length = 0.0;          ///< L_T, cm
    double integral_velocity_ratio = 0.0;  ///< U_T/U_f
    double viscosity = 0.0;                ///< nu, cm^2/s
    double reynolds = 0.0;                 ///< U_T L_T / nu
};

/// Integral-scale velocity implied by a Kolmogorov cascade from the channel
/// scale R = r nu/U_f up to L_T: U_T/U_f = u (L_T U_f/(r nu))^(1/3).
/// Throws std::invalid_argument for non-positive inputs.
[[nodiscard]] SubgridScales subgrid_scaling(double u_rms_over_uf, double l_t, double u_f,
                                            double nu, double r = 100.0);

}  // namespace dlflame
