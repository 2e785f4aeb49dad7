#include "dlflame/pde_integrator.hpp"
#include "dlflame/stationary_solver.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace dlflame;

namespace {

std::vector<double> random_coeffs(int n, double amp) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-amp, amp);
    std::vector<double> g(n);
    for (auto& x : g) x = d(rng);
    return g;
}

}  // namespace

static void BM_ConvolveA(benchmark::State& state) {
    const auto g = random_coeffs(static_cast<int>(state.range(0)), 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(convolve_a(g));
}
BENCHMARK(BM_ConvolveA)->Arg(30)->Arg(150)->Arg(300);

static void BM_Residual(benchmark::State& state) {
    const auto p = derive_flame_params(7.0);
    const auto ch = channel_from_ratio(p, 5.0, 150);
    const auto spec = synthesize(ch.width, 150, 0.5, 0);
    const auto resp = response_factors(p, spec);
    const auto a_turb = turbulent_forcing(p, spec, resp, ch.n_modes);
    const auto g = random_coeffs(ch.n_modes, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(residual(g, p, ch, a_turb));
}
BENCHMARK(BM_Residual);

static void BM_SolveHeadline(benchmark::State& state) {
    const auto p = derive_flame_params(7.0);
    const auto ch = channel_from_ratio(p, 5.0, 150);
    const auto spec = synthesize(ch.width, 150, 0.5, 0);
    for (auto _ : state) benchmark::DoNotOptimize(solve(p, ch, spec, SolverSettings{}));
}
BENCHMARK(BM_SolveHeadline)->Unit(benchmark::kMillisecond);

static void BM_PdeStep(benchmark::State& state) {
    const auto p = derive_flame_params(5.0);
    const auto ch = channel_from_ratio(p, 3.0, 32);
    const PdeIntegrator integ(p, ch, synthesize(ch.width, 8, 0.1, 0));
    auto f = integ.random_field(1e-2, 1);
    for (auto _ : state) {
        f = integ.step(f, 0.01);
        benchmark::DoNotOptimize(f.coeffs.data());
    }
}
BENCHMARK(BM_PdeStep);
BENCHMARK_MAIN();
