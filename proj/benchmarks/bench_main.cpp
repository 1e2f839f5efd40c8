#include <benchmark/benchmark.h>

#include <numbers>

#include "oscimedia/floquet.hpp"
#include "oscimedia/mathieu.hpp"
#include "oscimedia/photons.hpp"
#include "oscimedia/propagation.hpp"

using namespace oscimedia;

namespace {

const MediumSpec medium{2.0};
constexpr double half_pi = std::numbers::pi / 2;

void BM_Monodromy(benchmark::State& state) {
  const ModeSpec mode{1.016, half_pi};
  const double sigma = sigma_reference(medium, mode, 0.3);
  const double tol = state.range(0) == 0 ? 1e-10 : 1e-12;
  for (auto _ : state) {
    benchmark::DoNotOptimize(monodromy(medium, mode, 0.3, sigma, tol));
  }
}
BENCHMARK(BM_Monodromy)->Arg(0)->Arg(1);

void BM_IsolatedExponent(benchmark::State& state) {
  const ModeSpec mode{2.2, 1.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(isolated_exponent(medium, mode, 0.3));
  }
}
BENCHMARK(BM_IsolatedExponent);

void BM_EvolveFpm(benchmark::State& state) {
  const ModeSpec mode{1.016, half_pi};
  const double sigma = sigma_reference(medium, mode, 0.3);
  const auto periods = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto t = evolve_fpm(medium, mode, MotionProfile::harmonic(0.3), sigma,
                        AmplitudePair::polarization(1.0, 0.0), {0.0, two_pi * periods});
    benchmark::DoNotOptimize(t.states.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvolveFpm)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ExponentScan(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(exponent_scan(medium, 0.3, half_pi, {0.9, 1.1}, 201));
  }
}
BENCHMARK(BM_ExponentScan)->Unit(benchmark::kMillisecond);

void BM_StabilityChart(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(stability_chart({0.0, 5.0, n}, {-1.0, 1.0, n}));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_StabilityChart)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_PhotonSeries(benchmark::State& state) {
  const ModeSpec mode{1.016, half_pi};
  for (auto _ : state) {
    auto s = photon_density_series(medium, mode, 0.3, 100, 64);
    benchmark::DoNotOptimize(s.density.data());
  }
}
BENCHMARK(BM_PhotonSeries)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
