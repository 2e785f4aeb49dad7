#include "dlflame/thermo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dlflame {

FlameParams derive_flame_params(double theta, double l_f) {
    if (!std::isfinite(theta) || !std::isfinite(l_f)) {
        throw std::invalid_argument("derive_flame_params: non-finite input");
    }
    if (theta <= 1.0) {
        throw std::invalid_argument("derive_flame_params: theta must exceed 1, got " +
                                    std::to_string(theta));
    }
    if (l_f <= 0.0) {
        throw std::invalid_argument("derive_flame_params: l_f must be positive");
    }
    const double ln_theta = std::log(theta);
    const double tm1 = theta - 1.0;

    FlameParams p;
    p.theta = theta;
    p.l_f = l_f;
    p.lambda_c = 2.0 * std::numbers::pi * l_f * (1.0 + theta * (theta + 1.0) / (tm1 * tm1) * ln_theta);
    p.r_c = 0.5 * p.lambda_c;
    p.c1 = 0.0;
    p.c2 = theta * ln_theta / tm1;
    return p;
}

FlameParams custom_flame_params(double theta, double l_f, double lambda_c, double c1, double c2) {
    if (!std::isfinite(theta) || !std::isfinite(l_f) || !std::isfinite(lambda_c) ||
        !std::isfinite(c1) || !std::isfinite(c2)) {
        throw std::invalid_argument("custom_flame_params: non-finite input");
    }
    if (theta < 1.0 || l_f < 0.0 || lambda_c < 0.0 || c1 < 0.0 || c2 < 0.0) {
        throw std::invalid_argument("custom_flame_params: out-of-range constant");
    }
    return FlameParams{theta, l_f, lambda_c, 0.5 * lambda_c, c1, c2};
}

FlameParams derive_flame_params(double theta, double l_f, const FlameOverrides& overrides) {
    FlameParams p = derive_flame_params(theta, l_f);
    if (overrides.has_lambda_c) {
        p.lambda_c = overrides.lambda_c;
        p.r_c = 0.5 * p.lambda_c;
    }
    if (overrides.has_c1) p.c1 = overrides.c1;
    if (overrides.has_c2) p.c2 = overrides.c2;
    return custom_flame_params(p.theta, p.l_f, p.lambda_c, p.c1, p.c2);
}

}  // namespace dlflame
