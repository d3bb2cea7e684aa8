#include <benchmark/benchmark.h>

#include <epsqp/epsqp.hpp>

using namespace epsqp;

namespace {

const PhysicalParams kHarmonic = PhysicalParams::harmonic(1.0);

Grid2D square(std::size_t n) {
    const Grid1D line = make_grid(n, -10.0, 10.0);
    return Grid2D{line, line};
}

PhaseSpaceField coherent_chi(const Grid2D& g) {
    const WaveFunction psi = ho_coherent_state(g.q_axis, kHarmonic, 1.0, 0.5, 0.7);
    return chi_build(psi, to_momentum_space(psi, g.p_axis), g);
}

void BM_SpectralDerivative2D(benchmark::State& state) {
    const Grid2D g = square(static_cast<std::size_t>(state.range(0)));
    const PhaseSpaceField chi = coherent_chi(g);
    for (auto _ : state) benchmark::DoNotOptimize(spectral_derivative(chi.values, g, Axis::P, 2));
}

void BM_Shear(benchmark::State& state) {
    const Grid2D g = square(static_cast<std::size_t>(state.range(0)));
    const PhaseSpaceField chi = coherent_chi(g);
    for (auto _ : state) benchmark::DoNotOptimize(apply_extended_transform(chi, -0.5));
}

void BM_WignerDirect(benchmark::State& state) {
    const Grid2D g = square(static_cast<std::size_t>(state.range(0)));
    const WaveFunction psi = ho_coherent_state(g.q_axis, kHarmonic, 1.0, 0.5, 0.7);
    for (auto _ : state) benchmark::DoNotOptimize(wigner_direct(psi, g));
}

void BM_SplitStep(benchmark::State& state) {
    const Grid1D line = make_grid(static_cast<std::size_t>(state.range(0)), -10.0, 10.0);
    const WaveFunction psi = ho_coherent_state(line, kHarmonic, 1.0, 0.0, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(splitstep_propagate(psi, kHarmonic, 1.0, 1e-3));
}

void BM_HjResidualEps(benchmark::State& state) {
    const Grid2D g = square(static_cast<std::size_t>(state.range(0)));
    const auto snaps = make_snapshots(
        [&](double t) {
            const WaveFunction psi = ho_coherent_state(g.q_axis, kHarmonic, 1.0, 0.5, t);
            return chi_build(psi, to_momentum_space(psi, g.p_axis), g);
        },
        0.7, 1e-3);
    for (auto _ : state) benchmark::DoNotOptimize(hj_residual_eps(snaps, kHarmonic));
}

}  // namespace

BENCHMARK(BM_SpectralDerivative2D)->RangeMultiplier(2)->Range(128, 512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Shear)->RangeMultiplier(2)->Range(128, 512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WignerDirect)->RangeMultiplier(2)->Range(128, 512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SplitStep)->RangeMultiplier(2)->Range(256, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HjResidualEps)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
