#include "dlflame/errors.hpp"
#include "dlflame/pde_integrator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

using namespace dlflame;

namespace {

double spectral_velocity(const FrontField& f, double theta, double width) {
    double s = 0;
    for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
        const double k = std::numbers::pi * (n + 1) / width;
        s += k * k * f.coeffs[n] * f.coeffs[n];
    }
    return theta / 4 * s;
}

}  // namespace

TEST(Pde, PlanarFrontStaysPlanar) {
    const auto p = derive_flame_params(7.0);
    const auto ch = channel_from_ratio(p, 3.0, 16);
    const PdeIntegrator integ(p, ch, TurbulenceSpectrum{});
    auto f = integ.zero_field();
    for (int i = 0; i < 200; ++i) f = integ.step(f, 0.02);
    for (double c : f.coeffs) EXPECT_EQ(c, 0.0);
    EXPECT_NEAR(f.time, 4.0, 1e-12);
}

TEST(Pde, GridUsesTwoNPlusOnePoints) {
    const auto p = derive_flame_params(5.0);
    const PdeIntegrator integ(p, channel_from_ratio(p, 2.0, 20), TurbulenceSpectrum{});
    EXPECT_EQ(integ.grid_points(), 41);
    EXPECT_GT(integ.stable_dt(), 0.0);
}

TEST(Pde, SlopeBalanceVanishes) {
    const auto p = derive_flame_params(7.0);
    const auto ch = channel_from_ratio(p, 4.0, 32);
    const PdeIntegrator integ(p, ch, TurbulenceSpectrum{});
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto f = integ.random_field(0.5, seed);
        EXPECT_NEAR(integ.slope_balance(f), 0.0, 1e-10);
    }
}

TEST(Pde, GridVelocityMatchesParseval) {
    const auto p = derive_flame_params(7.0);
    const auto ch = channel_from_ratio(p, 4.0, 32);
    const PdeIntegrator integ(p, ch, TurbulenceSpectrum{});
    for (std::uint64_t seed : {4u, 5u}) {
        const auto f = integ.random_field(0.3, seed);
        const double v = spectral_velocity(f, 7.0, ch.width);
        EXPECT_NEAR(integ.instantaneous_velocity(f), v, 1e-10 * v);
    }
}

TEST(Dispersion, MarginalAtCutoff) {
    for (double theta : {5.0, 7.0, 9.0}) {
        const auto p = derive_flame_params(theta);
        const auto s = dispersion_growth(p, 2 * std::numbers::pi / p.lambda_c);
        EXPECT_NEAR(s.real(), 0.0, 1e-15);
        EXPECT_NEAR(s.imag(), 0.0, 1e-15);
    }
}

TEST(Dispersion, ThinFlameLimit) {
    const auto p = derive_flame_params(7.0);
    const double k = 1e-7;
    const double expect = 7.0 / 8.0 * (std::sqrt(1.0 + 48.0 / 7.0) - 1.0);
    EXPECT_NEAR(dispersion_growth(p, k).real() / k, expect, 1e-5);
    EXPECT_NEAR(expect, 1.578, 1e-3);
}

TEST(Dispersion, NoInstabilityWithoutExpansion) {
    const auto p = custom_flame_params(1.0, 1.0, 2 * std::numbers::pi, 0.0, 1.0);
    for (double k = 0.01; k < 5.0; k *= 1.5) EXPECT_LE(dispersion_growth(p, k).real(), 1e-15);
}

TEST(Pde, LinearGrowthMatchesDispersion) {
    const auto p = derive_flame_params(7.0);
    const auto ch = channel_from_ratio(p, 6.0, 8);
    for (int n = 1; n <= 5; ++n) {
        const double sigma = dispersion_growth(p, std::numbers::pi * n / ch.width).real();
        ASSERT_GT(sigma, 0.0);
        const double fit = fit_growth_rate(p, ch, n, 12.0 / sigma, 0.01);
        EXPECT_NEAR(fit, sigma, 0.02 * sigma) << "mode " << n;
    }
    EXPECT_LT(std::abs(fit_growth_rate(p, ch, 6, 200.0, 0.01)), 1e-3);
}

TEST(Pde, ShortWavesDecay) {
    const auto p = derive_flame_params(7.0);
    const auto ch = channel_from_ratio(p, 6.0, 10);
    for (int n : {7, 9}) {
        EXPECT_LT(fit_growth_rate(p, ch, n, 100.0, 0.01), 0.0);
        EXPECT_LT(dispersion_growth(p, std::numbers::pi * n / ch.width).real(), 0.0);
    }
}

TEST(Pde, NonFiniteStateAborts) {
    const auto p = derive_flame_params(7.0);
    const auto ch = channel_from_ratio(p, 3.0, 8);
    const PdeIntegrator integ(p, ch, TurbulenceSpectrum{});
    auto f = integ.zero_field();
    f.coeffs[2] = std::numeric_limits<double>::quiet_NaN();
    f.time = 12.5;
    try {
        (void)integ.step(f, 0.01);
        FAIL() << "expected NumericalError";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("t = 12.51"), std::string::npos) << e.what();
    }
}

TEST(MeasureVelocity, FlatAndSteadyTrajectories) {
    const auto p = derive_flame_params(7.0);
    const auto ch = channel_from_ratio(p, 3.0, 8);
    const PdeIntegrator integ(p, ch, TurbulenceSpectrum{});
    std::vector<FrontField> flat(5, integ.zero_field());
    for (int i = 0; i < 5; ++i) flat[i].time = i;
    EXPECT_EQ(measure_velocity(flat, p, ch, 0.0, 4.0), 0.0);

    auto f = integ.random_field(0.2, 3);
    std::vector<FrontField> steady(5, f);
    for (int i = 0; i < 5; ++i) steady[i].time = i;
    EXPECT_NEAR(measure_velocity(steady, p, ch, 0.0, 4.0), integ.instantaneous_velocity(f), 1e-12);
    EXPECT_THROW((void)measure_velocity(steady, p, ch, 2.0, 2.0), std::invalid_argument);
}

TEST(Pde, SaturatesOnCurvedFlame) {
    const auto p = derive_flame_params(7.0);
    const auto ch = channel_from_ratio(p, 2.0, 32);
    PdeRunSettings s;
    s.dt = 0.02;
    s.t_start = 1500.0;
    s.t_end = 1600.0;
    const auto run = run_pde(p, ch, TurbulenceSpectrum{}, s);
    EXPECT_NEAR(run.velocity, 0.3058, 1e-3);
}

namespace {

double weak_case(double dt, double u) {
    const auto p = derive_flame_params(5.0);
    const auto ch = channel_from_ratio(p, 3.0, 32);
    const auto spec = synthesize(ch.width, 8, u, 0);
    PdeRunSettings s;
    s.dt = dt;
    s.t_start = 400.0;
    s.t_end = 2000.0;
    return run_pde(p, ch, spec, s).velocity;
}

}  // namespace

TEST(Pde, TimeStepConvergenceAtWeakIntensity) {
    const double coarse = weak_case(0.02, 0.1);
    const double fine = weak_case(0.01, 0.1);
    EXPECT_LT(std::abs(coarse - fine) / fine, 0.005);
}

TEST(Pde, AgreesWithTimeDomainSplitAtWeakIntensity) {
    const auto p = derive_flame_params(5.0);
    const auto ch = channel_from_ratio(p, 3.0, 32);
    const auto spec = synthesize(ch.width, 8, 0.1, 0);
    SolverSettings st;
    st.response_form = ResponseForm::time_domain;
    const double split = solve(p, ch, spec, st).velocity;
    EXPECT_NEAR(weak_case(0.01, 0.1), split, 0.03 * split);
}

TEST(Pde, SnapshotCsv) {
    const auto p = derive_flame_params(7.0);
    const auto ch = channel_from_ratio(p, 3.0, 4);
    const PdeIntegrator integ(p, ch, TurbulenceSpectrum{});
    std::vector<FrontField> snaps = {integ.random_field(0.1, 1), integ.random_field(0.1, 2)};
    std::ostringstream o;
    write_snapshot_csv(o, integ, snaps);
    const std::string text = o.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "t,x,F");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 2 * 9);
}
