#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

namespace dlflame {

/// Frozen 2D incompressible turbulence in a channel of width R:
///
///   u_z = sum_i U_i cos(k_i z + phi_i) cos(k_i x)
///   u_x = sum_i U_i sin(k_i z + phi_i) sin(k_i x),   k_i = pi i / R,
///
/// with U_i proportional to k_i^(-5/6) and sum U_i^2 / 4 = u_rms^2.
/// There is no i = 0 mode.
struct TurbulenceSpectrum {
    double channel_width = 1.0;
    int n_t = 0;
    std::vector<double> k;
    std::vector<double> amp;
    std::vector<double> phase;
    double u_rms = 0.0;
    std::uint64_t seed = 0;

    [[nodiscard]] bool empty() const { return n_t == 0; }
};

/// Phases are drawn i.i.d. uniform on [0, 2 pi) from std::mt19937_64 seeded
/// with `seed`, using the top 53 bits of each draw. Amplitudes and wavenumbers
/// never depend on the seed.
[[nodiscard]] TurbulenceSpectrum synthesize(double channel_width, int n_t, double u_rms,
                                            std::uint64_t seed);

struct VelocitySample {
    double u_z = 0.0;
    double u_x = 0.0;
};

/// Velocity in the laboratory frame at (x, z).
[[nodiscard]] VelocitySample eval_velocity_lab(const TurbulenceSpectrum& spec, double x, double z);

/// Velocity seen by the front at time t, i.e. at z = U_f t with U_f = 1.
[[nodiscard]] VelocitySample eval_velocity(const TurbulenceSpectrum& spec, double x, double t);

/// The forcing (1 + Phi^-1 d/dt) u_z of mode i written as
/// amplitude * cos(k_i t + phase_offset).
struct ForcingTerm {
    double amplitude = 0.0;
    double phase_offset = 0.0;
};
[[nodiscard]] std::vector<ForcingTerm> forcing_amplitudes(const TurbulenceSpectrum& spec);

/// Columns: i, k_i, U_i, phi_i.
void write_spectrum_csv(std::ostream& out, const TurbulenceSpectrum& spec);

}  // namespace dlflame
