#include "dlflame/linear_response.hpp"

#include "dlflame/csv.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dlflame {

ResponseFactor response_factor(const FlameParams& params, double k, ResponseForm form) {
    const double theta = params.theta;
    // Balance of the instability drive and front inertia; the damping term
    // is always >= 1 so D never vanishes.
    const double instability = 0.5 * (theta - 1.0) * (1.0 - params.r_c * k / std::numbers::pi);
    const double inertia = (theta + 1.0) / (2.0 * theta) * (1.0 + params.c1 * params.l_f * k);
    const double drive = form == ResponseForm::published ? instability - inertia
                                                         : -(instability + inertia);
    const double damping = 1.0 + params.c2 * params.l_f * k;
    ResponseFactor r;
    r.d = std::hypot(drive, damping);
    r.gamma = std::atan2(-damping, drive);
    return r;
}

ModeResponse response_factors(const FlameParams& params, const TurbulenceSpectrum& spec,
                              ResponseForm form) {
    ModeResponse resp;
    resp.d.resize(spec.n_t);
    resp.gamma.resize(spec.n_t);
    resp.h_amp.resize(spec.n_t);
    for (int i = 0; i < spec.n_t; ++i) {
        const auto f = response_factor(params, spec.k[i], form);
        resp.d[i] = f.d;
        resp.gamma[i] = f.gamma;
        resp.h_amp[i] = std::numbers::sqrt2 * spec.amp[i] / (f.d * spec.k[i]);
    }
    return resp;
}

std::vector<double> oscillating_coefficients(const ModeResponse& resp,
                                             const TurbulenceSpectrum& spec, double t) {
    std::vector<double> h(spec.n_t);
    for (int i = 0; i < spec.n_t; ++i) {
        h[i] = resp.h_amp[i] *
               std::cos(spec.k[i] * t + spec.phase[i] + 0.25 * std::numbers::pi + resp.gamma[i]);
    }
    return h;
}

double turbulent_velocity_no_dl(const FlameParams& params, const TurbulenceSpectrum& spec,
                                ResponseForm form) {
    double sum = 0.0;
    for (int i = 0; i < spec.n_t; ++i) {
        const double d = response_factor(params, spec.k[i], form).d;
        sum += spec.amp[i] * spec.amp[i] / (d * d);
    }
    return 0.25 * params.theta * sum;
}

const char* to_string(ResponseForm form) {
    return form == ResponseForm::published ? "published" : "time_domain";
}

ResponseForm parse_response_form(const std::string& name) {
    if (name == "published") return ResponseForm::published;
    if (name == "time_domain") return ResponseForm::time_domain;
    throw std::invalid_argument("unknown response form '" + name + "'");
}

void write_response_csv(std::ostream& out, const ModeResponse& resp) {
    csv::Writer w(out, {"i", "D_i", "gamma_i", "h_amp_i"});
    for (std::size_t i = 0; i < resp.d.size(); ++i) {
        w.cell(static_cast<long long>(i + 1)).cell(resp.d[i]).cell(resp.gamma[i]).cell(resp.h_amp[i]);
        w.end_row();
    }
}

}  // namespace dlflame
