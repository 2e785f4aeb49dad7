#include "dlflame/stationary_solver.hpp"

#include "dlflame/csv.hpp"
#include "dlflame/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace dlflame {

namespace {

void require_expansion(const FlameParams& params, const char* who) {
    if (!(params.theta > 1.0)) {
        throw std::invalid_argument(std::string(who) + ": theta must exceed 1");
    }
}

double nonlinear_coefficient(double theta) {
    return 0.5 * (theta / (theta - 1.0) + (theta - 1.0) * (theta - 1.0) / (4.0 * theta));
}

/// Quadratic part of the Galerkin balance for all modes, without allocation.
/// g and out are 0-based (entry i-1 is mode i).
void quadratic_terms(std::span<const double> g, std::span<const double> a_turb, double theta,
                     std::span<double> out) {
    const int n = static_cast<int>(g.size());
    const double cb = theta / (theta - 1.0);
    const double ca = nonlinear_coefficient(theta);
    for (int m = 1; m <= n; ++m) {
        double a = 0.0;
        for (int i = 1; i < m; ++i) a += g[i - 1] * g[m - i - 1];
        double b = 0.0;
        for (int i = 1; i + m <= n; ++i) b += g[i - 1] * g[i + m - 1];
        out[m - 1] = -cb * b + ca * (a + a_turb[m - 1]);
    }
}

std::vector<double> linear_coefficients(const FlameParams& params, const ChannelSpec& channel) {
    std::vector<double> lin(channel.n_modes);
    const double ratio = params.r_c / channel.width;
    for (int i = 1; i <= channel.n_modes; ++i) lin[i - 1] = 1.0 - ratio * i;
    return lin;
}

double max_abs(std::span<const double> v) {
    // NaN must propagate; std::max would drop it
    double m = 0.0;
    for (double x : v) {
        if (std::isnan(x)) return x;
        m = std::max(m, std::abs(x));
    }
    return m;
}

Eigen::MatrixXd jacobian(std::span<const double> g, std::span<const double> lin, double theta) {
    const int n = static_cast<int>(g.size());
    const double cb = theta / (theta - 1.0);
    const double ca = nonlinear_coefficient(theta);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int m = 1; m <= n; ++m) {
        jac(m - 1, m - 1) += lin[m - 1];
        // dA_m/dG_j = 2 G_{m-j}, 1 <= j <= m-1
        for (int j = 1; j < m; ++j) jac(m - 1, j - 1) += 2.0 * ca * g[m - j - 1];
        // dB_m/dG_j = G_{j+m} + G_{j-m}
        for (int j = 1; j <= n; ++j) {
            double d = 0.0;
            if (j + m <= n) d += g[j + m - 1];
            if (j - m >= 1) d += g[j - m - 1];
            jac(m - 1, j - 1) -= cb * d;
        }
    }
    return jac;
}

struct NewtonResult {
    bool accepted = false;
    int steps = 0;
    double residual = 0.0;
    std::vector<double> g;
};

NewtonResult newton_polish(std::vector<double> g, std::span<const double> lin,
                           std::span<const double> a_turb, double theta,
                           const SolverSettings& settings) {
    const int n = static_cast<int>(g.size());
    std::vector<double> quad(n), res(n);
    NewtonResult out;
    auto eval = [&] {
        quadratic_terms(g, a_turb, theta, quad);
        for (int i = 0; i < n; ++i) res[i] = lin[i] * g[i] + quad[i];
        return max_abs(res);
    };
    double norm = eval();
    constexpr int max_steps = 60;
    for (int step = 0; step < max_steps && norm > settings.tol; ++step) {
        const Eigen::MatrixXd jac = jacobian(g, lin, theta);
        const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(res.data(), n);
        const Eigen::VectorXd delta = jac.fullPivLu().solve(rhs);
        if (!delta.allFinite()) return out;
        for (int i = 0; i < n; ++i) g[i] += delta[i];
        const double next = eval();
        ++out.steps;
        if (!std::isfinite(next) || next > 10.0 * norm) return out;
        norm = next;
    }
    if (norm > settings.tol) return out;

    const Eigen::MatrixXd jac = jacobian(g, lin, theta);
    Eigen::EigenSolver<Eigen::MatrixXd> eig(jac, false);
    if (eig.info() != Eigen::Success) return out;
    if (eig.eigenvalues().real().maxCoeff() > settings.stability_margin) return out;

    out.accepted = true;
    out.residual = norm;
    out.g = std::move(g);
    return out;
}

}  // namespace

ChannelSpec channel_from_ratio(const FlameParams& params, double r_over_rc, int n_modes) {
    if (!(r_over_rc > 0.0) || !std::isfinite(r_over_rc)) {
        throw std::invalid_argument("channel_from_ratio: R/R_c must be positive and finite");
    }
    if (n_modes < 1) throw std::invalid_argument("channel_from_ratio: n_modes must be >= 1");
    return ChannelSpec{r_over_rc * params.r_c, n_modes};
}

std::vector<double> convolve_a(std::span<const double> g) {
    const int n = static_cast<int>(g.size());
    std::vector<double> a(2 * n + 1, 0.0);
    for (int m = 2; m <= 2 * n; ++m) {
        double s = 0.0;
        for (int i = std::max(1, m - n); i <= std::min(n, m - 1); ++i) s += g[i - 1] * g[m - i - 1];
        a[m] = s;
    }
    return a;
}

std::vector<double> convolve_b(std::span<const double> g) {
    const int n = static_cast<int>(g.size());
    std::vector<double> b(n + 1, 0.0);
    for (int l = 0; l < n; ++l) {
        double s = 0.0;
        for (int i = 1; i + l <= n; ++i) s += g[i - 1] * g[i + l - 1];
        b[l] = s;
    }
    return b;
}

std::vector<double> turbulent_forcing(const FlameParams&, const TurbulenceSpectrum& spec,
                                      const ModeResponse& resp, int n_modes) {
    std::vector<double> out(std::max(n_modes, 0), 0.0);
    for (int i = 2; i <= n_modes; i += 2) {
        const int j = i / 2;
        if (j > spec.n_t) break;
        const double ratio = spec.amp[j - 1] / resp.d[j - 1];
        out[i - 1] = ratio * ratio;
    }
    return out;
}

std::vector<double> residual(std::span<const double> g, const FlameParams& params,
                             const ChannelSpec& channel, std::span<const double> a_turb) {
    require_expansion(params, "residual");
    if (static_cast<int>(g.size()) != channel.n_modes || a_turb.size() != g.size()) {
        throw std::invalid_argument("residual: size mismatch between g, a_turb and channel");
    }
    std::vector<double> out(g.size());
    quadratic_terms(g, a_turb, params.theta, out);
    const auto lin = linear_coefficients(params, channel);
    for (std::size_t i = 0; i < g.size(); ++i) out[i] += lin[i] * g[i];
    return out;
}

StationaryState relax(const FlameParams& params, const ChannelSpec& channel,
                      std::span<const double> a_turb, const SolverSettings& settings) {
    require_expansion(params, "relax");
    if (!(settings.step > 0.0) || !(settings.tol > 0.0)) {
        throw std::invalid_argument("relax: step and tol must be positive");
    }
    if (channel.n_modes < 1 || !(channel.width > 0.0)) {
        throw std::invalid_argument("relax: invalid channel");
    }
    if (static_cast<int>(a_turb.size()) != channel.n_modes) {
        throw std::invalid_argument("relax: a_turb must have n_modes entries");
    }
    const int n = channel.n_modes;
    const auto lin = linear_coefficients(params, channel);

    std::vector<double> decay(n), gain(n);
    for (int i = 0; i < n; ++i) {
        const double z = lin[i] * settings.step;
        decay[i] = std::exp(z);
        gain[i] = std::abs(z) > 1e-12 ? std::expm1(z) / lin[i] : settings.step;
    }

    StationaryState st;
    st.g.resize(n);
    std::mt19937_64 rng(settings.init_seed);
    for (auto& gi : st.g) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        gi = settings.init_amplitude * (2.0 * u - 1.0);
    }

    std::vector<double> quad(n);
    long next_newton = 0;
    long newton_wait = settings.newton_interval;
    for (long it = 0;; ++it) {
        quadratic_terms(st.g, a_turb, params.theta, quad);
        double norm = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = std::abs(lin[i] * st.g[i] + quad[i]);
            norm = std::isnan(r) ? r : std::max(norm, r);
            if (std::isnan(norm)) break;
        }
        st.residual_norm = norm;
        st.iterations = it;
        if (!std::isfinite(norm)) {
            throw NumericalError("relax: non-finite residual at iteration " + std::to_string(it) +
                                 " (step " + std::to_string(settings.step) + ")");
        }
        if (norm <= settings.tol) {
            st.converged = true;
            return st;
        }
        if (settings.newton_polish && norm < settings.newton_trigger && it >= next_newton) {
            auto nr = newton_polish(st.g, lin, a_turb, params.theta, settings);
            st.newton_steps += nr.steps;
            if (nr.accepted) {
                st.g = std::move(nr.g);
                st.residual_norm = nr.residual;
                st.converged = true;
                return st;
            }
            next_newton = it + newton_wait;
            newton_wait *= 2;
        }
        if (it >= settings.max_iter) return st;
        for (int i = 0; i < n; ++i) st.g[i] = decay[i] * st.g[i] + gain[i] * quad[i];
    }
}

double flame_velocity(const StationaryState& state, const FlameParams& params,
                      const TurbulenceSpectrum& spec, const ModeResponse& resp) {
    double b0 = 0.0;
    for (double gi : state.g) b0 += gi * gi;
    double turb = 0.0;
    for (int i = 0; i < spec.n_t; ++i) {
        const double r = spec.amp[i] / resp.d[i];
        turb += r * r;
    }
    return 0.25 * params.theta * (b0 + turb);
}

StationarySolution solve(const FlameParams& params, const ChannelSpec& channel,
                         const TurbulenceSpectrum& spec, const SolverSettings& settings) {
    const auto resp = response_factors(params, spec, settings.response_form);
    const auto a_turb = turbulent_forcing(params, spec, resp, channel.n_modes);

    StationarySolution sol;
    sol.state = relax(params, channel, a_turb, settings);
    sol.velocity = flame_velocity(sol.state, params, spec, resp);
    sol.velocity_no_dl = turbulent_velocity_no_dl(params, spec, settings.response_form);

    for (int s = 1; s <= settings.extra_seeds; ++s) {
        SolverSettings alt = settings;
        alt.init_seed = settings.init_seed + static_cast<std::uint64_t>(s);
        const auto st = relax(params, channel, a_turb, alt);
        const double v = flame_velocity(st, params, spec, resp);
        sol.seed_spread = std::max(sol.seed_spread, std::abs(v - sol.velocity));
    }
    return sol;
}

void write_state_csv(std::ostream& out, const StationaryState& state, const ChannelSpec& channel) {
    csv::Writer w(out, {"i", "G_i", "F_i"});
    for (std::size_t i = 0; i < state.g.size(); ++i) {
        const double mode = static_cast<double>(i + 1);
        w.cell(static_cast<long long>(i + 1))
            .cell(state.g[i])
            .cell(channel.width * state.g[i] / (std::numbers::pi * mode));
        w.end_row();
    }
}

}  // namespace dlflame
