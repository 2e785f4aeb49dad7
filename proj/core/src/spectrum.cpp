#include "dlflame/spectrum.hpp"

#include "dlflame/csv.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dlflame {

namespace {

double unit_interval(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TurbulenceSpectrum synthesize(double channel_width, int n_t, double u_rms, std::uint64_t seed) {
    if (!(channel_width > 0.0) || !std::isfinite(channel_width)) {
        throw std::invalid_argument("synthesize: channel width must be positive and finite");
    }
    if (n_t < 0) throw std::invalid_argument("synthesize: negative number of harmonics");
    if (!(u_rms >= 0.0) || !std::isfinite(u_rms)) {
        throw std::invalid_argument("synthesize: u_rms must be non-negative and finite");
    }

    TurbulenceSpectrum s;
    s.channel_width = channel_width;
    s.n_t = n_t;
    s.u_rms = u_rms;
    s.seed = seed;
    s.k.resize(n_t);
    s.amp.resize(n_t);
    s.phase.resize(n_t);

    // Shape relative to the first harmonic, (k_i/k_1)^(-5/6) = i^(-5/6);
    // the prefactor is fixed entirely by the rms normalization.
    double shape_sq = 0.0;
    for (int i = 1; i <= n_t; ++i) {
        s.k[i - 1] = std::numbers::pi * i / channel_width;
        s.amp[i - 1] = std::pow(static_cast<double>(i), -5.0 / 6.0);
        shape_sq += s.amp[i - 1] * s.amp[i - 1];
    }
    if (n_t > 0) {
        const double scale = 2.0 * u_rms / std::sqrt(shape_sq);
        for (auto& a : s.amp) a *= scale;
    }

    std::mt19937_64 rng(seed);
    for (auto& p : s.phase) p = 2.0 * std::numbers::pi * unit_interval(rng);
    return s;
}

VelocitySample eval_velocity_lab(const TurbulenceSpectrum& spec, double x, double z) {
    VelocitySample v;
    for (int i = 0; i < spec.n_t; ++i) {
        const double arg = spec.k[i] * z + spec.phase[i];
        v.u_z += spec.amp[i] * std::cos(arg) * std::cos(spec.k[i] * x);
        v.u_x += spec.amp[i] * std::sin(arg) * std::sin(spec.k[i] * x);
    }
    return v;
}

VelocitySample eval_velocity(const TurbulenceSpectrum& spec, double x, double t) {
    return eval_velocity_lab(spec, x, t);
}

std::vector<ForcingTerm> forcing_amplitudes(const TurbulenceSpectrum& spec) {
    std::vector<ForcingTerm> out(spec.n_t);
    for (int i = 0; i < spec.n_t; ++i) {
        out[i].amplitude = std::numbers::sqrt2 * spec.amp[i];
        out[i].phase_offset = spec.phase[i] + 0.25 * std::numbers::pi;
    }
    return out;
}

void write_spectrum_csv(std::ostream& out, const TurbulenceSpectrum& spec) {
    csv::Writer w(out, {"i", "k_i", "U_i", "phi_i"});
    for (int i = 0; i < spec.n_t; ++i) {
        w.cell(i + 1).cell(spec.k[i]).cell(spec.amp[i]).cell(spec.phase[i]);
        w.end_row();
    }
}

}  // namespace dlflame
