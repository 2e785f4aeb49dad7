#include "dlflame/selftest.hpp"

#include "dlflame/baselines.hpp"
#include "dlflame/errors.hpp"
#include "dlflame/linear_response.hpp"
#include "dlflame/pde_integrator.hpp"
#include "dlflame/spectrum.hpp"
#include "dlflame/stationary_solver.hpp"
#include "dlflame/thermo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace dlflame {

namespace {

// Like std::max but a NaN in either argument wins.
double nan_max(double a, double b) {
    return std::isnan(a) || std::isnan(b) ? std::numeric_limits<double>::quiet_NaN() : std::max(a, b);
}

std::string num(double v, int digits = 6) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

struct Case {
    FlameParams params;
    ChannelSpec channel;
    TurbulenceSpectrum spec;
};

Case make_case(double theta, double r_over_rc, double u_rms, int n, int n_t, std::uint64_t seed = 0) {
    Case c;
    c.params = derive_flame_params(theta);
    c.channel = channel_from_ratio(c.params, r_over_rc, n);
    c.spec = synthesize(c.channel.width, n_t, u_rms, seed);
    return c;
}

StationarySolution solve_case(const Case& c, SolverSettings s = {}) {
    auto sol = solve(c.params, c.channel, c.spec, s);
    if (!sol.state.converged) {
        throw NumericalError("relaxation did not converge (residual " + num(sol.state.residual_norm) + ")");
    }
    return sol;
}

CriterionResult headline() {
    CriterionResult r{1, "headline comparison", false, {}, 0.0};
    const auto sol = solve_case(make_case(7.0, 5.0, 0.5, 150, 150));
    r.pass = std::abs(sol.velocity - 1.13) <= 0.10 && std::abs(sol.velocity_no_dl - 0.42) <= 0.04;
    r.detail = "full " + num(sol.velocity) + " (1.13 +- 0.10), no_dl " + num(sol.velocity_no_dl) +
               " (0.42 +- 0.04)";
    return r;
}

CriterionResult zero_turbulence() {
    CriterionResult r{2, "zero-turbulence recovery of the curved-flame formula", true, {}, 0.0};
    const SolverSettings s;
    const double limit = 1e-6 + 10.0 * s.tol;
    double worst = 0.0;
    std::string where;
    for (double theta : {5.0, 7.0, 9.0}) {
        for (double ratio : {1.5, 2.0, 3.0, 4.0, 5.0}) {
            const auto sol = solve_case(make_case(theta, ratio, 0.0, 150, 0), s);
            const double err = std::abs(sol.velocity - curved_flame_velocity(theta, ratio));
            if (err > worst) {
                worst = err;
                where = "theta " + num(theta) + ", R/R_c " + num(ratio);
            }
        }
    }
    r.pass = worst <= limit;
    r.detail = "15 points, max error " + num(worst, 3) + " at " + where + " (limit " + num(limit, 3) + ")";
    return r;
}

CriterionResult spectral_decay() {
    CriterionResult r{3, "spectral decay of the stationary front", false, {}, 0.0};
    const auto c = make_case(7.0, 5.0, 0.5, 150, 150);
    const auto sol = solve_case(c);
    const auto& g = sol.state.g;
    // Harmonic amplitudes of G(x) = sum F_i cos(pi i x/R), F_i = R G_i / (pi i).
    std::vector<double> amp(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        amp[i] = std::abs(c.channel.width * g[i] / (std::numbers::pi * static_cast<double>(i + 1)));
    }
    const auto lead = std::max_element(amp.begin(), amp.end());
    const long lead_i = lead - amp.begin() + 1;
    const double ratio = *lead / amp[99];
    r.pass = ratio > 1e5;
    r.detail = "leading harmonic i=" + std::to_string(lead_i) + " amplitude / 100th = " + num(ratio, 4) +
               " (> 1e5); slope coefficients |G_1|/|G_100| = " + num(std::abs(g[0] / g[99]), 3) +
               ", |G_" + std::to_string(lead_i) + "|/|G_100| = " + num(std::abs(g[lead_i - 1] / g[99]), 4);
    return r;
}

CriterionResult truncation() {
    CriterionResult r{4, "truncation accuracy", false, {}, 0.0};
    const double v30 = solve_case(make_case(7.0, 5.0, 0.5, 30, 150)).velocity;
    const double v150 = solve_case(make_case(7.0, 5.0, 0.5, 150, 150)).velocity;
    const double v300 = solve_case(make_case(7.0, 5.0, 0.5, 300, 150)).velocity;
    const double e30 = std::abs(v30 - v150) / v150;
    const double e300 = std::abs(v150 - v300) / v150;
    r.pass = e30 <= 0.06 && e300 <= 0.01;
    r.detail = "N=30 " + num(v30) + ", N=150 " + num(v150) + ", N=300 " + num(v300) + "; |30-150| " +
               num(100 * e30, 3) + "% (<= 6%), |150-300| " + num(100 * e300, 3) + "% (<= 1%)";
    return r;
}

CriterionResult weak_turbulence() {
    CriterionResult r{5, "small-intensity instability floor", false, {}, 0.0};
    const double v = solve_case(make_case(7.0, 5.0, 0.01, 150, 150)).velocity;
    r.pass = v >= 0.28 && v <= 0.42;
    r.detail = "u_rms 0.01: velocity " + num(v) + " (in [0.28, 0.42])";
    return r;
}

// Substitutes H_i(t) into the oscillating-mode equation
//   (a/k) H'' + b H' + s c k H = sqrt(2) U cos(k t + phi + pi/4)
// with derivatives taken from quarter-period shifts of H itself:
// H' = k H(t + pi/(2k)), H'' = -k^2 H(t). Returns max |residual| / (sqrt(2) U).
double oscillator_residual(const FlameParams& p, const TurbulenceSpectrum& spec, ResponseForm form,
                           double sign) {
    const auto resp = response_factors(p, spec, form);
    double worst = 0.0;
    for (int i = 0; i < spec.n_t; ++i) {
        const double k = spec.k[i];
        const double a = (p.theta + 1.0) / (2.0 * p.theta) * (1.0 + p.c1 * p.l_f * k);
        const double b = 1.0 + p.c2 * p.l_f * k;
        const double c = 0.5 * (p.theta - 1.0) * (1.0 - p.r_c * k / std::numbers::pi);
        const double scale = std::numbers::sqrt2 * spec.amp[i];
        const double period = 2.0 * std::numbers::pi / k;
        for (int j = 0; j < 100; ++j) {
            const double t = period * j / 100.0;
            const double h = oscillating_coefficients(resp, spec, t)[i];
            const double hq = oscillating_coefficients(resp, spec, t + 0.25 * period)[i];
            const double dh = k * hq;
            const double d2h = -k * k * h;
            const double lhs = a / k * d2h + b * dh + sign * c * k * h;
            const double rhs = scale * std::cos(k * t + spec.phase[i] + 0.25 * std::numbers::pi);
            worst = nan_max(worst, std::abs(lhs - rhs) / scale);
        }
    }
    return worst;
}

CriterionResult response_oracle() {
    CriterionResult r{6, "closed-form oscillating response satisfies its mode equation", true, {}, 0.0};
    std::ostringstream d;
    double worst_td = 0.0, worst_pub = 0.0, pub_printed = 0.0;
    for (double theta : {1.0, 5.0, 7.0, 9.0}) {
        FlameParams p;
        double width = 10.0;
        if (theta == 1.0) {
            p = custom_flame_params(1.0, 0.0, 0.0, 0.0, 0.0);
        } else {
            p = derive_flame_params(theta);
            width = 5.0 * p.r_c;
        }
        const auto spec = synthesize(width, 150, 0.5, 0);
        // time_domain form against the destabilizing sign (-c k H);
        // published form against the opposite sign (+c k H).
        worst_td = nan_max(worst_td, oscillator_residual(p, spec, ResponseForm::time_domain, -1.0));
        worst_pub = nan_max(worst_pub, oscillator_residual(p, spec, ResponseForm::published, +1.0));
        if (theta > 1.0) {
            pub_printed = nan_max(pub_printed, oscillator_residual(p, spec, ResponseForm::published, -1.0));
        }
    }
    r.pass = worst_td <= 1e-10 && worst_pub <= 1e-10;
    d << "theta {1,5,7,9}, 150 modes x 100 times: time_domain vs -ckH equation " << num(worst_td, 3)
      << ", published vs +ckH equation " << num(worst_pub, 3) << " (<= 1e-10); published vs -ckH "
      << num(pub_printed, 3) << " (sign mismatch, expected O(1))";
    r.detail = d.str();
    return r;
}

CriterionResult analytic_limits() {
    CriterionResult r{7, "analytic limits", false, {}, 0.0};
    const auto p1 = custom_flame_params(1.0, 0.0, 0.0, 0.0, 0.0);
    double cw_err = 0.0;
    for (std::uint64_t seed : {0u, 1u, 2u}) {
        for (double u : {0.1, 0.5, 1.0}) {
            const auto spec = synthesize(10.0, 150, u, seed);
            const double v = turbulent_velocity_no_dl(p1, spec);
            cw_err = nan_max(cw_err, std::abs(v - clavin_williams(u)) / clavin_williams(u));
        }
    }
    double wide_err = 0.0;
    double hump_err = 0.0;
    for (double theta : {5.0, 7.0, 9.0}) {
        const auto p = derive_flame_params(theta);
        const double v = single_harmonic_velocity(p, 1e4, 0.5);
        wide_err = nan_max(wide_err, std::abs(v - wide_tube_limit(theta, 0.5)) / wide_tube_limit(theta, 0.5));
        double best = 0.0;
        for (int i = 1; i <= 9000; ++i) best = nan_max(best, curved_flame_velocity(theta, 1.0 + i * 1e-3));
        hump_err = nan_max(hump_err, std::abs(best - curved_flame_limit(theta)));
    }
    r.pass = cw_err <= 1e-12 && wide_err <= 1e-3 && hump_err <= 1e-12;
    r.detail = "zero-expansion limit rel err " + num(cw_err, 3) + " (<= 1e-12); R/R_c = 1e4 vs wide-tube " +
               num(100 * wide_err, 3) + "% (<= 0.1%); max curved-flame vs limit " + num(hump_err, 3) +
               " (<= 1e-12)";
    return r;
}

CriterionResult cross_oracle() {
    CriterionResult r{8, "time integration vs stationary split", false, {}, 0.0};
    const auto c = make_case(5.0, 3.0, 0.3, 32, 8);
    const double split = solve_case(c).velocity;
    SolverSettings td;
    td.response_form = ResponseForm::time_domain;
    const double split_td = solve_case(c, td).velocity;
    PdeRunSettings s;
    std::ostringstream d;
    d << "theta 5, R/R_c 3, u_rms 0.3, N 32, N_T 8: split " << num(split) << " (time_domain " << num(split_td)
      << "), ";
    try {
        const auto run = run_pde(c.params, c.channel, c.spec, s);
        const double rel = std::abs(run.velocity - split) / split;
        r.pass = rel <= 0.05;
        d << "time integration " << num(run.velocity) << " averaged over [" << num(s.t_start) << ", "
          << num(s.t_end) << "], diff " << num(100 * rel, 3) << "% (<= 5%)";
    } catch (const NumericalError& e) {
        d << "time integration failed: " << e.what();
    }
    r.detail = d.str();
    return r;
}

CriterionResult dispersion() {
    CriterionResult r{9, "dispersion relation", false, {}, 0.0};
    const auto p = derive_flame_params(7.0);
    // R = 6 R_c puts modes 1..5 inside (0, 2pi/lambda_c) and mode 6 on it.
    const auto ch = channel_from_ratio(p, 6.0, 8);
    double worst = 0.0;
    for (int n = 1; n <= 5; ++n) {
        const double k = std::numbers::pi * n / ch.width;
        const double sigma = dispersion_growth(p, k).real();
        const double fit = fit_growth_rate(p, ch, n, 12.0 / sigma, 0.01);
        worst = nan_max(worst, std::abs(fit - sigma) / sigma);
    }
    const double marginal = fit_growth_rate(p, ch, 6, 200.0, 0.01);
    r.pass = worst <= 0.02 && std::abs(marginal) < 1e-3;
    r.detail = "modes 1-5 max rel deviation " + num(100 * worst, 3) + "% (<= 2%); k = 2pi/lambda_c rate " +
               num(marginal, 3) + " (|.| < 1e-3)";
    return r;
}

CriterionResult properties() {
    CriterionResult r{10, "property suite", true, {}, 0.0};
    std::ostringstream d;
    auto check = [&](const std::string& name, bool ok, const std::string& info) {
        r.pass = r.pass && ok;
        d << name << (ok ? " ok" : " FAILED") << " (" << info << "); ";
    };

    // spectrum normalization
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> uw(1.0, 500.0), uu(0.01, 2.0);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const int nt = 1 + static_cast<int>(rng() % 300);
            const double u = uu(rng);
            const auto s = synthesize(uw(rng), nt, u, rng());
            double sum = 0.0;
            for (double a : s.amp) sum += a * a;
            worst = nan_max(worst, std::abs(sum / 4.0 - u * u) / (u * u));
        }
        check("normalization", worst <= 1e-12, num(worst, 3));
    }
    // phase invariance and quadratic scaling
    {
        const auto p = derive_flame_params(7.0);
        const auto ch = channel_from_ratio(p, 5.0, 150);
        const auto s0 = synthesize(ch.width, 150, 0.5, 0);
        const auto s1 = synthesize(ch.width, 150, 0.5, 987654321);
        const auto a = solve(p, ch, s0);
        const auto b = solve(p, ch, s1);
        const bool same = a.velocity == b.velocity && a.velocity_no_dl == b.velocity_no_dl;
        check("phase invariance", same, "full " + num(a.velocity - b.velocity, 3) + ", no_dl " +
                                            num(a.velocity_no_dl - b.velocity_no_dl, 3));
        const auto s2 = synthesize(ch.width, 150, 1.0, 0);
        const auto s3 = synthesize(ch.width, 150, 0.25, 0);
        const double v1 = turbulent_velocity_no_dl(p, s0);
        const bool quad = turbulent_velocity_no_dl(p, s2) == 4.0 * v1 && turbulent_velocity_no_dl(p, s3) == 0.25 * v1;
        check("quadratic scaling", quad, "alpha 2 and 1/2, exact");
    }
    // convolution identities on a grid, R = pi so that k_i = i
    {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> ug(-1.0, 1.0);
        std::vector<double> g(8);
        for (auto& x : g) x = ug(rng);
        const auto A = convolve_a(g);
        const auto B = convolve_b(g);
        double worst = 0.0;
        for (int j = 0; j < 1024; ++j) {
            const double x = std::numbers::pi * (j + 0.5) / 1024.0;
            double gx = 0.0, pg = 0.0;
            for (int i = 1; i <= 8; ++i) {
                gx -= g[i - 1] * std::sin(i * x);
                pg += g[i - 1] * std::cos(i * x);
            }
            double sa = 0.0, sb = B[0];
            for (std::size_t m = 0; m < A.size(); ++m) sa += A[m] * std::cos(m * x);
            for (std::size_t l = 1; l < B.size(); ++l) sb += 2.0 * B[l] * std::cos(l * x);
            worst = nan_max(worst, std::abs(sa - (pg * pg - gx * gx)));
            worst = nan_max(worst, std::abs(0.5 * sa + 0.5 * sb - pg * pg));
        }
        check("convolution grid oracle", worst <= 1e-12, num(worst, 3));
    }
    // multi-seed relaxation agreement
    {
        const auto c = make_case(7.0, 5.0, 0.5, 150, 150);
        SolverSettings s;
        s.extra_seeds = 2;
        const auto sol = solve(c.params, c.channel, c.spec, s);
        check("multi-seed agreement", sol.seed_spread <= 10.0 * s.tol, "spread " + num(sol.seed_spread, 3));
    }
    // resonance smoothing with more turbulent harmonics
    {
        double max1 = 0.0, max150 = 0.0;
        for (int i = 1; i <= 24; ++i) {
            const double ratio = 0.25 * i;
            max1 = nan_max(max1, solve_case(make_case(7.0, ratio, 0.5, 150, 1)).velocity);
            max150 = nan_max(max150, solve_case(make_case(7.0, ratio, 0.5, 150, 150)).velocity);
        }
        check("resonance ordering", max1 > max150, "max N_T=1 " + num(max1) + " > max N_T=150 " + num(max150));
    }
    r.detail = d.str();
    if (r.detail.size() >= 2) r.detail.resize(r.detail.size() - 2);
    return r;
}

}  // namespace

CriterionResult run_criterion(int id) {
    using Fn = CriterionResult (*)();
    static constexpr Fn table[] = {headline,        zero_turbulence, spectral_decay, truncation,
                                   weak_turbulence, response_oracle, analytic_limits, cross_oracle,
                                   dispersion,      properties};
    if (id < 1 || id > acceptance_criteria) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = table[id - 1]();
    } catch (const std::exception& e) {
        r.id = id;
        r.title = "criterion " + std::to_string(id);
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

void print_result(std::ostream& out, const CriterionResult& r) {
    char head[16];
    std::snprintf(head, sizeof head, "%s %2d ", r.pass ? "PASS" : "FAIL", r.id);
    out << head << r.title << ": " << r.detail << " [" << num(r.seconds, 3) << " s]\n";
    out.flush();
}

std::vector<CriterionResult> run_acceptance(std::ostream& out) {
    std::vector<CriterionResult> all;
    for (int id = 1; id <= acceptance_criteria; ++id) {
        all.push_back(run_criterion(id));
        print_result(out, all.back());
    }
    return all;
}

}  // namespace dlflame
