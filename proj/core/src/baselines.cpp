#include "dlflame/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dlflame {

namespace {

double curved_coefficient(double theta) {
    if (!(theta > 1.0) || !std::isfinite(theta)) {
        throw std::invalid_argument("curved flame: theta must exceed 1");
    }
    const double t = theta;
    return 2.0 * t * (t - 1.0) * (t - 1.0) / (t * t * t + t * t + 3.0 * t - 1.0);
}

}  // namespace

int curved_flame_mode(double r_over_rc) {
    if (!(r_over_rc > 1.0)) return 0;
    // x(1-x) peaks at x = 1/2, i.e. M = R/(2 R_c); compare the two neighbours.
    const double target = 0.5 * r_over_rc;
    const int lo = std::max(1, static_cast<int>(std::floor(target)));
    const int hi = lo + 1;
    auto score = [&](int m) {
        const double x = m / r_over_rc;
        return x * (1.0 - x);
    };
    // Exact ties (R/R_c = 2M + 1) go to the smaller M despite rounding.
    return score(hi) > score(lo) + 1e-14 ? hi : lo;
}

double curved_flame_velocity(double theta, double r_over_rc) {
    const double coef = curved_coefficient(theta);
    const int m = curved_flame_mode(r_over_rc);
    if (m == 0) return 0.0;
    const double x = m / r_over_rc;
    return coef * x * (1.0 - x);
}

double curved_flame_limit(double theta) {
    return 0.25 * curved_coefficient(theta);
}

double single_harmonic_velocity(const FlameParams& params, double r_over_rc, double u_rms) {
    const double t = params.theta;
    const double r = r_over_rc * params.r_c;
    const double damping = 1.0 + std::numbers::pi * params.c2 * params.l_f / r;
    const double drive = 0.5 * (t - 1.0) * (1.0 - 1.0 / r_over_rc) -
                         (t + 1.0) / (2.0 * t) * (1.0 + std::numbers::pi * params.c1 * params.l_f / r);
    return t * u_rms * u_rms / (damping * damping + drive * drive);
}

double wide_tube_limit(double theta, double u_rms) {
    const double t = theta;
    const double q = t * t - 2.0 * t - 1.0;
    return 4.0 * t * t * t / (4.0 * t * t + q * q) * u_rms * u_rms;
}

double clavin_williams(double u_rms) { return 0.5 * u_rms * u_rms; }

double three_d_estimate(double two_d_velocity) { return 2.0 * two_d_velocity; }

SubgridScales subgrid_scaling(double u_rms_over_uf, double l_t, double u_f, double nu, double r) {
    if (!(u_rms_over_uf > 0.0) || !(l_t > 0.0) || !(u_f > 0.0) || !(nu > 0.0) || !(r > 0.0)) {
        throw std::invalid_argument("subgrid_scaling: inputs must be positive");
    }
    SubgridScales s;
    s.integral_length = l_t;
    s.viscosity = nu;
    s.integral_velocity_ratio = u_rms_over_uf * std::cbrt(l_t * u_f / (r * nu));
    s.reynolds = s.integral_velocity_ratio * u_f * l_t / nu;
    return s;
}

}  // namespace dlflame
