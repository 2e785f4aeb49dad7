#include "dlflame/baselines.hpp"
#include "dlflame/linear_response.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace dlflame;

namespace {

// Plugs H_i(t) into (a/k) H'' + b H' + sign * c k H - sqrt(2) U cos(k t + phi + pi/4),
// with H' and H'' taken from quarter-period shifts of H. Returns the largest
// residual relative to the forcing amplitude.
double mode_equation_residual(const FlameParams& p, const TurbulenceSpectrum& s, const ModeResponse& r,
                              double sign) {
    double worst = 0.0;
    for (int i = 0; i < s.n_t; ++i) {
        const double k = s.k[i];
        const double a = (p.theta + 1) / (2 * p.theta) * (1 + p.c1 * p.l_f * k);
        const double b = 1 + p.c2 * p.l_f * k;
        const double c = (p.theta - 1) / 2 * (1 - p.r_c * k / std::numbers::pi);
        const double period = 2 * std::numbers::pi / k;
        for (int j = 0; j < 100; ++j) {
            const double t = 0.731 + period * j / 100;
            const double h = oscillating_coefficients(r, s, t)[i];
            const double dh = k * oscillating_coefficients(r, s, t + period / 4)[i];
            const double d2h = -k * k * h;
            const double force = std::numbers::sqrt2 * s.amp[i] * std::cos(k * t + s.phase[i] + std::numbers::pi / 4);
            const double res = a / k * d2h + b * dh + sign * c * k * h - force;
            worst = std::max(worst, std::abs(res) / (std::numbers::sqrt2 * s.amp[i]));
        }
    }
    return worst;
}

FlameParams zero_expansion() { return custom_flame_params(1.0, 0.0, 0.0, 0.0, 0.0); }

}  // namespace

TEST(LinearResponse, ZeroExpansionFactorIsRootTwo) {
    const auto p = zero_expansion();
    const auto s = synthesize(10.0, 40, 0.5, 0);
    for (auto form : {ResponseForm::published, ResponseForm::time_domain}) {
        const auto r = response_factors(p, s, form);
        for (double d : r.d) EXPECT_NEAR(d, std::numbers::sqrt2, 1e-15);
    }
}

TEST(LinearResponse, MinimumSitsBelowBracketZero) {
    const auto p = derive_flame_params(7.0);
    // (T-1)/2 (1 - R_c k/pi) = (T+1)/(2T)  =>  R_c k/pi = 1 - (T+1)/(T(T-1)).
    const double q = 1.0 - 8.0 / 42.0;
    const double k_star = q * std::numbers::pi / p.r_c;
    EXPECT_NEAR(q, 0.8095, 1e-4);
    EXPECT_NEAR(response_factor(p, k_star).d, 1.0 + p.c2 * k_star, 1e-12);
    double best = 1e9, best_q = 0.0;
    for (int i = 1; i < 20000; ++i) {
        const double k = i * 1e-4 * std::numbers::pi / p.r_c;
        const double d = response_factor(p, k).d;
        if (d < best) {
            best = d;
            best_q = i * 1e-4;
        }
    }
    // the growing damping term pulls the minimum below the bracket zero
    EXPECT_LT(best, 1.0 + p.c2 * k_star);
    EXPECT_LT(best_q, q);
    EXPECT_GT(best_q, 0.5);
    EXPECT_GT(best, 1.0);
}

TEST(LinearResponse, PhaseInLowerHalfPlane) {
    for (double theta : {1.5, 5.0, 7.0, 9.0}) {
        const auto p = derive_flame_params(theta);
        const auto s = synthesize(4.0 * p.r_c, 150, 0.5, 1);
        for (auto form : {ResponseForm::published, ResponseForm::time_domain}) {
            const auto r = response_factors(p, s, form);
            for (int i = 0; i < s.n_t; ++i) {
                EXPECT_GT(r.d[i], 0.0);
                EXPECT_LT(std::sin(r.gamma[i]), 0.0);
                EXPECT_GT(r.gamma[i], -std::numbers::pi);
                EXPECT_LT(r.gamma[i], 0.0);
                // Reconstruct (cos, sin) from the bracket and damping numerators.
                const double k = s.k[i];
                const double instab = (theta - 1) / 2 * (1 - p.r_c * k / std::numbers::pi);
                const double inert = (theta + 1) / (2 * theta);
                const double drive = form == ResponseForm::published ? instab - inert : -(instab + inert);
                const double c = drive / r.d[i];
                const double sn = -(1 + p.c2 * k) / r.d[i];
                EXPECT_NEAR(c * c + sn * sn, 1.0, 1e-12);
                EXPECT_NEAR(std::cos(r.gamma[i]), c, 1e-12);
                EXPECT_NEAR(std::sin(r.gamma[i]), sn, 1e-12);
            }
        }
    }
}

TEST(LinearResponse, ZeroAmplitudeGivesZeroResponse) {
    const auto p = derive_flame_params(7.0);
    const auto s = synthesize(20.0, 5, 0.0, 0);
    const auto r = response_factors(p, s);
    for (double h : r.h_amp) EXPECT_EQ(h, 0.0);
}

TEST(LinearResponse, EnvelopeAndNodes) {
    const auto p = derive_flame_params(7.0);
    const auto s = synthesize(30.0, 3, 0.5, 2);
    const auto r = response_factors(p, s);
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(r.h_amp[i], std::numbers::sqrt2 * s.amp[i] / (r.d[i] * s.k[i]), 1e-15);
        // cosine argument = pi/2
        const double t = (std::numbers::pi / 2 - s.phase[i] - std::numbers::pi / 4 - r.gamma[i]) / s.k[i];
        EXPECT_NEAR(oscillating_coefficients(r, s, t)[i], 0.0, 1e-12 * r.h_amp[i]);
        double peak = 0.0;
        for (int j = 0; j < 2000; ++j) {
            peak = std::max(peak, std::abs(oscillating_coefficients(r, s, j * 0.01)[i]));
        }
        EXPECT_LE(peak, r.h_amp[i] * (1 + 1e-15));
    }
}

// Time-domain form solves the mode equation with the destabilizing sign.
TEST(LinearResponse, TimeDomainFormSolvesModeEquation) {
    for (double theta : {1.0, 5.0, 7.0, 9.0}) {
        const auto p = theta == 1.0 ? zero_expansion() : derive_flame_params(theta);
        const double width = theta == 1.0 ? 10.0 : 5.0 * p.r_c;
        const auto s = synthesize(width, 150, 0.5, 0);
        const auto r = response_factors(p, s, ResponseForm::time_domain);
        EXPECT_LE(mode_equation_residual(p, s, r, -1.0), 1e-10) << "theta " << theta;
    }
}

// Published form solves the same equation with the opposite sign of the
// instability term and fails the destabilizing one.
TEST(LinearResponse, PublishedFormSolvesStabilizingSign) {
    for (double theta : {5.0, 7.0, 9.0}) {
        const auto p = derive_flame_params(theta);
        const auto s = synthesize(5.0 * p.r_c, 150, 0.5, 0);
        const auto r = response_factors(p, s, ResponseForm::published);
        EXPECT_LE(mode_equation_residual(p, s, r, +1.0), 1e-10);
        EXPECT_GT(mode_equation_residual(p, s, r, -1.0), 1e-2);
    }
}

TEST(LinearResponse, MutatedResponseFailsOracle) {
    const auto p = derive_flame_params(7.0);
    const auto s = synthesize(5.0 * p.r_c, 20, 0.5, 0);
    auto r = response_factors(p, s, ResponseForm::time_domain);
    for (auto& g : r.gamma) g = -g;
    EXPECT_GT(mode_equation_residual(p, s, r, -1.0), 1e-2);
}

TEST(LinearResponse, ZeroExpansionVelocityIsClavinWilliams) {
    const auto p = zero_expansion();
    for (double u : {0.1, 0.5, 1.0}) {
        const auto s = synthesize(10.0, 150, u, 3);
        EXPECT_NEAR(turbulent_velocity_no_dl(p, s), u * u / 2, 1e-12 * u * u);
    }
}

TEST(LinearResponse, SingleHarmonicWideChannel) {
    const auto p = derive_flame_params(7.0);
    const auto s = synthesize(1e4 * p.r_c, 1, 0.5, 0);
    EXPECT_NEAR(turbulent_velocity_no_dl(p, s), 0.2537, 2e-4);
    EXPECT_NEAR(turbulent_velocity_no_dl(p, s) / 0.25, 1.0148, 1e-3);
}

TEST(LinearResponse, HeadlineWithoutInstability) {
    const auto p = derive_flame_params(7.0);
    const auto s = synthesize(5.0 * p.r_c, 150, 0.5, 0);
    EXPECT_NEAR(turbulent_velocity_no_dl(p, s), 0.42, 0.04);
}

TEST(LinearResponse, AgreesWithSingleHarmonicClosedForm) {
    for (double theta : {1.5, 3.0, 5.0, 7.0, 9.0, 12.0}) {
        const auto p = derive_flame_params(theta);
        for (double ratio : {0.1, 0.5, 0.9, 1.0, 1.3, 2.0, 5.0, 40.0}) {
            const auto s = synthesize(ratio * p.r_c, 1, 0.7, 0);
            const double v = turbulent_velocity_no_dl(p, s);
            EXPECT_NEAR(v, single_harmonic_velocity(p, ratio, 0.7), 1e-12 * v);
        }
    }
}

TEST(LinearResponse, QuadraticInIntensity) {
    const auto p = derive_flame_params(7.0);
    const double w = 5.0 * p.r_c;
    const double v = turbulent_velocity_no_dl(p, synthesize(w, 150, 0.3, 0));
    EXPECT_EQ(turbulent_velocity_no_dl(p, synthesize(w, 150, 0.6, 0)), 4.0 * v);
    EXPECT_EQ(turbulent_velocity_no_dl(p, synthesize(w, 150, 0.15, 0)), 0.25 * v);
    const double v3 = turbulent_velocity_no_dl(p, synthesize(w, 150, 0.9, 0));
    EXPECT_NEAR(v3 / v, 9.0, 1e-13);
}

TEST(LinearResponse, PhaseIndependent) {
    const auto p = derive_flame_params(5.0);
    const double w = 3.0 * p.r_c;
    EXPECT_EQ(turbulent_velocity_no_dl(p, synthesize(w, 150, 0.5, 1)),
              turbulent_velocity_no_dl(p, synthesize(w, 150, 0.5, 99)));
}

TEST(LinearResponse, MonotoneApproachToWideChannelLimit) {
    const auto p = derive_flame_params(7.0);
    const double limit = wide_tube_limit(7.0, 0.5);
    double prev = 1e9;
    for (double ratio : {1e2, 1e3, 1e4}) {
        const double err = std::abs(turbulent_velocity_no_dl(p, synthesize(ratio * p.r_c, 1, 0.5, 0)) - limit);
        EXPECT_LT(err, prev);
        prev = err;
    }
    EXPECT_LT(prev / limit, 1e-3);
}

TEST(LinearResponse, FormNamesRoundTrip) {
    for (auto f : {ResponseForm::published, ResponseForm::time_domain}) {
        EXPECT_EQ(parse_response_form(to_string(f)), f);
    }
    EXPECT_THROW((void)parse_response_form("sum"), std::invalid_argument);
}

TEST(LinearResponse, CsvExport) {
    const auto p = derive_flame_params(7.0);
    const auto s = synthesize(20.0, 4, 0.5, 0);
    std::ostringstream o;
    write_response_csv(o, response_factors(p, s));
    EXPECT_EQ(o.str().substr(0, o.str().find('\n')), "i,D_i,gamma_i,h_amp_i");
}
