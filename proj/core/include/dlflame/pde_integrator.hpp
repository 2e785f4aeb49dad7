#pragma once

#include "dlflame/spectrum.hpp"
#include "dlflame/stationary_solver.hpp"
#include "dlflame/thermo.hpp"

#include <complex>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

namespace dlflame {

/// F(x, t) = sum_{n=1..N} F_n(t) cos(pi n x / R). No n = 0 mode: the mean
/// front position is absorbed into the moving frame.
struct FrontField {
    std::vector<double> coeffs;      ///< F_n, entry n-1
    std::vector<double> coeffs_dot;  ///< dF_n/dt
    double time = 0.0;
};

/// Pseudo-spectral integrator of the full front equation in modal form,
///
///   (a_n/k_n) F_n'' + b_n F_n' - c_n k_n F_n + P_n[Q] = f_n(t),
///   Q = T/2 F_x^2 + kappa (F_x^2 - (Phi F)^2),  kappa = (T-1)^3 / (16 T),
///
/// with a_n, b_n, c_n the inertia, damping and instability coefficients and
/// f_n = U_n (cos(k_n t + phi_n) - sin(k_n t + phi_n)). Q is evaluated on a
/// midpoint grid of 2N + 1 points, which projects the quadratic terms back
/// onto N modes without aliasing. The zero mode of Q is the instantaneous
/// velocity U_w/U_f - 1.
class PdeIntegrator {
public:
    PdeIntegrator(const FlameParams& params, const ChannelSpec& channel,
                  const TurbulenceSpectrum& spec);

    [[nodiscard]] int n_modes() const { return n_; }
    [[nodiscard]] int grid_points() const { return m_; }
    [[nodiscard]] double wavenumber(int n) const { return k_[n - 1]; }
    [[nodiscard]] std::span<const double> grid() const { return x_; }

    [[nodiscard]] FrontField zero_field() const;
    /// Uniform random F_n in [-amplitude, amplitude], zero time derivative.
    [[nodiscard]] FrontField random_field(double amplitude, std::uint64_t seed) const;

    /// One classical RK4 step. Throws NumericalError on non-finite values.
    [[nodiscard]] FrontField step(const FrontField& field, double dt) const;

    /// Largest dt for which every linear mode stays inside the RK4 stability
    /// region, with a safety factor of 1/2.
    [[nodiscard]] double stable_dt() const;

    /// Zero mode of Q evaluated on the collocation grid.
    [[nodiscard]] double instantaneous_velocity(const FrontField& field) const;

    /// Grid average of F_x^2 - (Phi F)^2. Vanishes for any cosine series.
    [[nodiscard]] double slope_balance(const FrontField& field) const;

    /// F(x_j) on the collocation grid.
    [[nodiscard]] std::vector<double> front_on_grid(const FrontField& field) const;

private:
    void rhs(double t, std::span<const double> f, std::span<const double> v,
             std::span<double> df, std::span<double> dv, double* velocity) const;

    double theta_;
    double kappa_;
    int n_;
    int m_;
    int n_t_;
    std::vector<double> k_, inertia_, damping_, instability_;
    std::vector<double> forcing_amp_, forcing_phase_;
    std::vector<double> x_;
    std::vector<double> cos_, sin_;  // n-major tables, [n-1][j]
};

/// Free-function form of PdeIntegrator::step.
[[nodiscard]] FrontField step(const FrontField& field, double dt, const FlameParams& params,
                              const ChannelSpec& channel, const TurbulenceSpectrum& spec);

/// Largest-real-part root of
///   (T+1)/(2T)(1 + C_1 k) s^2 + (1 + C_2 k) k s - (T-1)/2 (1 - lambda_c k / 2pi) k^2 = 0.
[[nodiscard]] std::complex<double> dispersion_growth(const FlameParams& params, double k);

/// Time average over [t_start, t_end] of T/2 <F_x^2> + kappa <F_x^2 - (Phi F)^2>,
/// evaluated spectrally (the kappa term averages to zero in x) with the
/// trapezoidal rule on the sampled times.
[[nodiscard]] double measure_velocity(std::span<const FrontField> trajectory,
                                      const FlameParams& params, const ChannelSpec& channel,
                                      double t_start, double t_end);

struct PdeRunSettings {
    double dt = 0.01;
    double t_start = 500.0;  ///< averaging window start (transient excluded)
    double t_end = 3000.0;
    double init_amplitude = 1e-3;
    std::uint64_t init_seed = 0;
};

struct PdeRunResult {
    double velocity = 0.0;  ///< time-averaged instantaneous velocity
    FrontField final_field;
    long steps = 0;
};

/// Integrates from a small random front and averages the instantaneous
/// velocity over [t_start, t_end] on the fly. Throws NumericalError if the
/// front blows up, reporting the failing time.
[[nodiscard]] PdeRunResult run_pde(const FlameParams& params, const ChannelSpec& channel,
                                   const TurbulenceSpectrum& spec, const PdeRunSettings& settings);

/// Growth rate of a single cosine mode from a linear-regime integration with
/// zero turbulence: the mode starts at `amplitude` with zero velocity and the
/// rate is fitted by least squares to log|F_n| over the second half of
/// [0, duration].
[[nodiscard]] double fit_growth_rate(const FlameParams& params, const ChannelSpec& channel,
                                     int mode, double duration, double dt,
                                     double amplitude = 1e-10);

/// Long format snapshot: columns t, x, F.
void write_snapshot_csv(std::ostream& out, const PdeIntegrator& integrator,
                        std::span<const FrontField> snapshots);

}  // namespace dlflame
