#include "dlflame/pde_integrator.hpp"

#include "dlflame/csv.hpp"
#include "dlflame/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace dlflame {

PdeIntegrator::PdeIntegrator(const FlameParams& params, const ChannelSpec& channel,
                             const TurbulenceSpectrum& spec)
    : theta_(params.theta),
      kappa_(std::pow(params.theta - 1.0, 3) / (16.0 * params.theta)),
      n_(channel.n_modes),
      m_(2 * channel.n_modes + 1),
      n_t_(std::min(spec.n_t, channel.n_modes)) {
    if (n_ < 1 || !(channel.width > 0.0)) throw std::invalid_argument("PdeIntegrator: invalid channel");
    if (!(params.theta >= 1.0)) throw std::invalid_argument("PdeIntegrator: theta must be >= 1");
    if (spec.n_t > 0 && std::abs(spec.channel_width - channel.width) > 1e-12 * channel.width) {
        throw std::invalid_argument("PdeIntegrator: spectrum and channel widths differ");
    }
    const double theta = params.theta;
    k_.resize(n_);
    inertia_.resize(n_);
    damping_.resize(n_);
    instability_.resize(n_);
    for (int n = 1; n <= n_; ++n) {
        const double k = std::numbers::pi * n / channel.width;
        k_[n - 1] = k;
        inertia_[n - 1] = (theta + 1.0) / (2.0 * theta) * (1.0 + params.c1 * params.l_f * k);
        damping_[n - 1] = 1.0 + params.c2 * params.l_f * k;
        instability_[n - 1] = 0.5 * (theta - 1.0) * (1.0 - params.lambda_c * k / (2.0 * std::numbers::pi));
    }
    forcing_amp_.assign(spec.amp.begin(), spec.amp.begin() + n_t_);
    forcing_phase_.assign(spec.phase.begin(), spec.phase.begin() + n_t_);

    x_.resize(m_);
    for (int j = 0; j < m_; ++j) x_[j] = (j + 0.5) * channel.width / m_;
    cos_.resize(static_cast<std::size_t>(n_) * m_);
    sin_.resize(cos_.size());
    for (int n = 0; n < n_; ++n) {
        for (int j = 0; j < m_; ++j) {
            cos_[n * m_ + j] = std::cos(k_[n] * x_[j]);
            sin_[n * m_ + j] = std::sin(k_[n] * x_[j]);
        }
    }
}

FrontField PdeIntegrator::zero_field() const {
    FrontField f;
    f.coeffs.assign(n_, 0.0);
    f.coeffs_dot.assign(n_, 0.0);
    return f;
}

FrontField PdeIntegrator::random_field(double amplitude, std::uint64_t seed) const {
    FrontField f = zero_field();
    std::mt19937_64 rng(seed);
    for (auto& c : f.coeffs) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        c = amplitude * (2.0 * u - 1.0);
    }
    return f;
}

void PdeIntegrator::rhs(double t, std::span<const double> f, std::span<const double> v,
                        std::span<double> df, std::span<double> dv, double* velocity) const {
    std::vector<double> fx(m_, 0.0), pf(m_, 0.0);
    for (int n = 0; n < n_; ++n) {
        const double kf = k_[n] * f[n];
        if (kf == 0.0) continue;
        const double* c = &cos_[n * m_];
        const double* s = &sin_[n * m_];
        for (int j = 0; j < m_; ++j) {
            fx[j] -= kf * s[j];
            pf[j] += kf * c[j];
        }
    }
    double mean = 0.0;
    for (int j = 0; j < m_; ++j) {
        const double sq = fx[j] * fx[j];
        fx[j] = 0.5 * theta_ * sq + kappa_ * (sq - pf[j] * pf[j]);  // reuse as Q
        mean += fx[j];
    }
    if (velocity) *velocity = mean / m_;
    for (int n = 0; n < n_; ++n) {
        const double* c = &cos_[n * m_];
        double proj = 0.0;
        for (int j = 0; j < m_; ++j) proj += fx[j] * c[j];
        proj *= 2.0 / m_;
        double force = 0.0;
        if (n < n_t_) {
            const double arg = k_[n] * t + forcing_phase_[n];
            force = forcing_amp_[n] * (std::cos(arg) - std::sin(arg));
        }
        df[n] = v[n];
        dv[n] = k_[n] / inertia_[n] *
                (-damping_[n] * v[n] + instability_[n] * k_[n] * f[n] - proj + force);
    }
}

FrontField PdeIntegrator::step(const FrontField& field, double dt) const {
    if (!(dt > 0.0)) throw std::invalid_argument("PdeIntegrator::step: dt must be positive");
    const int n = n_;
    std::vector<double> k1f(n), k1v(n), k2f(n), k2v(n), k3f(n), k3v(n), k4f(n), k4v(n), tf(n), tv(n);
    const auto& f = field.coeffs;
    const auto& v = field.coeffs_dot;
    const double t = field.time;

    rhs(t, f, v, k1f, k1v, nullptr);
    for (int i = 0; i < n; ++i) { tf[i] = f[i] + 0.5 * dt * k1f[i]; tv[i] = v[i] + 0.5 * dt * k1v[i]; }
    rhs(t + 0.5 * dt, tf, tv, k2f, k2v, nullptr);
    for (int i = 0; i < n; ++i) { tf[i] = f[i] + 0.5 * dt * k2f[i]; tv[i] = v[i] + 0.5 * dt * k2v[i]; }
    rhs(t + 0.5 * dt, tf, tv, k3f, k3v, nullptr);
    for (int i = 0; i < n; ++i) { tf[i] = f[i] + dt * k3f[i]; tv[i] = v[i] + dt * k3v[i]; }
    rhs(t + dt, tf, tv, k4f, k4v, nullptr);

    FrontField out;
    out.coeffs.resize(n);
    out.coeffs_dot.resize(n);
    out.time = t + dt;
    bool finite = true;
    for (int i = 0; i < n; ++i) {
        out.coeffs[i] = f[i] + dt / 6.0 * (k1f[i] + 2.0 * k2f[i] + 2.0 * k3f[i] + k4f[i]);
        out.coeffs_dot[i] = v[i] + dt / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
        finite = finite && std::isfinite(out.coeffs[i]) && std::isfinite(out.coeffs_dot[i]);
    }
    if (!finite) {
        throw NumericalError("pde step: non-finite front at t = " + std::to_string(out.time));
    }
    return out;
}

double PdeIntegrator::stable_dt() const {
    // RK4 covers |z| <= 2.78 on the negative real axis and roughly 2.8 on the
    // imaginary one; use the modal eigenvalues and the forcing frequency.
    double fastest = 0.0;
    for (int n = 0; n < n_; ++n) {
        const double a = inertia_[n] / k_[n];
        const double disc = damping_[n] * damping_[n] + 4.0 * a * instability_[n] * k_[n];
        const std::complex<double> root = std::sqrt(std::complex<double>(disc, 0.0));
        const std::complex<double> s1 = (-damping_[n] + root) / (2.0 * a);
        const std::complex<double> s2 = (-damping_[n] - root) / (2.0 * a);
        fastest = std::max({fastest, std::abs(s1), std::abs(s2), k_[n]});
    }
    return fastest > 0.0 ? 0.5 * 2.78 / fastest : 1.0;
}

double PdeIntegrator::instantaneous_velocity(const FrontField& field) const {
    std::vector<double> df(n_), dv(n_);
    double v = 0.0;
    rhs(field.time, field.coeffs, field.coeffs_dot, df, dv, &v);
    return v;
}

double PdeIntegrator::slope_balance(const FrontField& field) const {
    double sum = 0.0;
    for (int j = 0; j < m_; ++j) {
        double fx = 0.0, pf = 0.0;
        for (int n = 0; n < n_; ++n) {
            fx -= k_[n] * field.coeffs[n] * sin_[n * m_ + j];
            pf += k_[n] * field.coeffs[n] * cos_[n * m_ + j];
        }
        sum += fx * fx - pf * pf;
    }
    return sum / m_;
}

std::vector<double> PdeIntegrator::front_on_grid(const FrontField& field) const {
    std::vector<double> out(m_, 0.0);
    for (int n = 0; n < n_; ++n) {
        for (int j = 0; j < m_; ++j) out[j] += field.coeffs[n] * cos_[n * m_ + j];
    }
    return out;
}

FrontField step(const FrontField& field, double dt, const FlameParams& params,
                const ChannelSpec& channel, const TurbulenceSpectrum& spec) {
    return PdeIntegrator(params, channel, spec).step(field, dt);
}

std::complex<double> dispersion_growth(const FlameParams& params, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("dispersion_growth: k must be positive");
    const double theta = params.theta;
    const double a = (theta + 1.0) / (2.0 * theta) * (1.0 + params.c1 * params.l_f * k);
    const double b = (1.0 + params.c2 * params.l_f * k) * k;
    const double c = -0.5 * (theta - 1.0) * (1.0 - params.lambda_c * k / (2.0 * std::numbers::pi)) * k * k;
    const std::complex<double> root = std::sqrt(std::complex<double>(b * b - 4.0 * a * c, 0.0));
    // -b + root is cancellation-prone when c is small; use the product of roots.
    const std::complex<double> s_minus = (-b - root) / (2.0 * a);
    if (root.imag() != 0.0) return (-b + root) / (2.0 * a);
    return c / (a * s_minus);
}

double measure_velocity(std::span<const FrontField> trajectory, const FlameParams& params,
                        const ChannelSpec& channel, double t_start, double t_end) {
    if (!(t_end > t_start)) throw std::invalid_argument("measure_velocity: need t_end > t_start");
    auto sample = [&](const FrontField& f) {
        double s = 0.0;
        for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
            const double k = std::numbers::pi * static_cast<double>(n + 1) / channel.width;
            s += k * k * f.coeffs[n] * f.coeffs[n];
        }
        return 0.25 * params.theta * s;
    };
    double acc = 0.0, span_t = 0.0;
    const FrontField* prev = nullptr;
    for (const auto& f : trajectory) {
        if (f.time < t_start || f.time > t_end) continue;
        if (prev) {
            const double h = f.time - prev->time;
            acc += 0.5 * h * (sample(*prev) + sample(f));
            span_t += h;
        }
        prev = &f;
    }
    if (span_t <= 0.0) {
        return prev ? sample(*prev) : 0.0;
    }
    return acc / span_t;
}

PdeRunResult run_pde(const FlameParams& params, const ChannelSpec& channel,
                     const TurbulenceSpectrum& spec, const PdeRunSettings& settings) {
    if (!(settings.dt > 0.0) || !(settings.t_end > settings.t_start) || settings.t_start < 0.0) {
        throw std::invalid_argument("run_pde: need dt > 0 and 0 <= t_start < t_end");
    }
    const PdeIntegrator integ(params, channel, spec);
    PdeRunResult res;
    FrontField f = integ.random_field(settings.init_amplitude, settings.init_seed);
    const long steps = std::lround(settings.t_end / settings.dt);
    double acc = 0.0;
    long count = 0;
    for (long s = 0; s < steps; ++s) {
        if (f.time >= settings.t_start) {
            acc += integ.instantaneous_velocity(f);
            ++count;
        }
        f = integ.step(f, settings.dt);
    }
    res.velocity = count > 0 ? acc / count : 0.0;
    res.final_field = std::move(f);
    res.steps = steps;
    return res;
}

double fit_growth_rate(const FlameParams& params, const ChannelSpec& channel, int mode,
                       double duration, double dt, double amplitude) {
    if (mode < 1 || mode > channel.n_modes) throw std::invalid_argument("fit_growth_rate: bad mode");
    const PdeIntegrator integ(params, channel, TurbulenceSpectrum{});
    FrontField f = integ.zero_field();
    f.coeffs[mode - 1] = amplitude;
    const long steps = std::lround(duration / dt);
    // Least-squares slope of log|F| against t over the second half.
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    long cnt = 0;
    for (long s = 0; s <= steps; ++s) {
        if (2 * s >= steps) {
            const double y = std::log(std::abs(f.coeffs[mode - 1]));
            st += f.time;
            sy += y;
            stt += f.time * f.time;
            sty += f.time * y;
            ++cnt;
        }
        if (s < steps) f = integ.step(f, dt);
    }
    const double denom = cnt * stt - st * st;
    return (cnt * sty - st * sy) / denom;
}

void write_snapshot_csv(std::ostream& out, const PdeIntegrator& integrator,
                        std::span<const FrontField> snapshots) {
    csv::Writer w(out, {"t", "x", "F"});
    const auto x = integrator.grid();
    for (const auto& s : snapshots) {
        const auto front = integrator.front_on_grid(s);
        for (std::size_t j = 0; j < x.size(); ++j) {
            w.cell(s.time).cell(x[j]).cell(front[j]);
            w.end_row();
        }
    }
}

}  // namespace dlflame
