#pragma once

#include "dlflame/spectrum.hpp"
#include "dlflame/thermo.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace dlflame {

/// Periodic response of the front to each turbulent harmonic, ignoring the
/// growing (unstable) homogeneous solutions:
///
///   H_i(t) = h_amp_i cos(k_i t + phi_i + pi/4 + gamma_i),
///   h_amp_i = sqrt(2) U_i / (D_i k_i).
struct ModeResponse {
    std::vector<double> d;
    std::vector<double> gamma;
    std::vector<double> h_amp;
};

/// Sign with which the instability term enters the oscillating-mode balance.
///
/// `published` combines instability drive and front inertia as a difference
///   D^2 = [(T-1)/2 (1 - R_c k/pi) - (T+1)/(2T)(1 + C_1 k)]^2 + (1 + C_2 k)^2,
/// which is the periodic solution of
///   (a/k) H'' + b H' + (T-1)/2 (1 - R_c k/pi) k H = f(t)
/// and reproduces the reference flame-speed values.
///
/// `time_domain` uses the sum of the two terms, which is the periodic solution
/// of the same balance with the destabilizing sign carried by the full
/// front equation,
///   (a/k) H'' + b H' - (T-1)/2 (1 - R_c k/pi) k H = f(t),
/// and is what the direct time integrator converges to at weak intensity.
enum class ResponseForm { published, time_domain };

/// D(k) and gamma(k) for a single wavenumber. gamma lies in (-pi, 0).
struct ResponseFactor {
    double d = 0.0;
    double gamma = 0.0;
};
[[nodiscard]] ResponseFactor response_factor(const FlameParams& params, double k,
                                             ResponseForm form = ResponseForm::published);

[[nodiscard]] ModeResponse response_factors(const FlameParams& params,
                                            const TurbulenceSpectrum& spec,
                                            ResponseForm form = ResponseForm::published);

/// H_i(t) for every mode of `spec`. The oscillating front is
/// H(x, t) = sum_i H_i(t) cos(k_i x).
[[nodiscard]] std::vector<double> oscillating_coefficients(const ModeResponse& resp,
                                                           const TurbulenceSpectrum& spec, double t);

/// Velocity increase U_w/U_f - 1 = Theta/4 sum U_i^2 / D_i^2.
/// Independent of the phases.
[[nodiscard]] double turbulent_velocity_no_dl(const FlameParams& params,
                                              const TurbulenceSpectrum& spec,
                                              ResponseForm form = ResponseForm::published);

[[nodiscard]] const char* to_string(ResponseForm form);
[[nodiscard]] ResponseForm parse_response_form(const std::string& name);

/// Columns: i, D_i, gamma_i, h_amp_i.
void write_response_csv(std::ostream& out, const ModeResponse& resp);

}  // namespace dlflame
