#pragma once

namespace dlflame {

/// Internal-structure constants of a premixed flame front.
///
/// All lengths are in units of the flame thickness, velocities in units of
/// the planar flame speed. `r_c` is the critical width of a 2D channel with
/// slip adiabatic walls and always equals `lambda_c / 2`.
struct FlameParams {
    double theta = 0.0;     ///< expansion factor rho_fuel / rho_burnt
    double l_f = 1.0;       ///< flame thickness
    double lambda_c = 0.0;  ///< cut-off wavelength of the hydrodynamic instability
    double r_c = 0.0;       ///< critical channel width, lambda_c / 2
    double c1 = 0.0;        ///< inertia correction from finite thickness
    double c2 = 0.0;        ///< damping correction from finite thickness
};

/// Thermo-chemical constants for unit Lewis number and constant thermal
/// conduction. Throws std::invalid_argument for theta <= 1, l_f <= 0 or
/// non-finite input.
[[nodiscard]] FlameParams derive_flame_params(double theta, double l_f = 1.0);

/// Builds FlameParams from user-supplied constants, bypassing the closure.
/// Allows theta == 1 and l_f == 0 so the zero-expansion thin-flame limit
/// can be expressed. r_c is set to lambda_c / 2.
[[nodiscard]] FlameParams custom_flame_params(double theta, double l_f, double lambda_c,
                                              double c1, double c2);

/// Same as derive_flame_params but with optional overrides applied on top.
struct FlameOverrides {
    bool has_lambda_c = false;
    double lambda_c = 0.0;
    bool has_c1 = false;
    double c1 = 0.0;
    bool has_c2 = false;
    double c2 = 0.0;
};
[[nodiscard]] FlameParams derive_flame_params(double theta, double l_f,
                                              const FlameOverrides& overrides);

}  // namespace dlflame
