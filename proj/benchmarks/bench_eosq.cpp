#include <benchmark/benchmark.h>

#include <memory>
#include <numbers>

#include "eosq/cli_io.hpp"
#include "eosq/statistics.hpp"

namespace {

using namespace eosq;

constexpr double kTHz = 2.0 * std::numbers::pi * 1e12;

ScenarioConfig offresonant() { return load_preset("fig3b-offresonant", false); }

void BM_Chi2Patterns(benchmark::State& state) {
  const ScenarioConfig cfg = offresonant();
  const ThreeLevelSusceptibility chi(make_scheme(cfg), make_constants(cfg));
  double w = 1.0 * kTHz;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi.patterns(w, 255 * kTHz));
    w += 1e-3 * kTHz;
  }
}
BENCHMARK(BM_Chi2Patterns);

void BM_WindowComponents(benchmark::State& state) {
  const MomentContext ctx = make_moment_context(offresonant());
  for (auto _ : state) {
    benchmark::DoNotOptimize(window_components(40 * kTHz, ctx.windows));
  }
}
BENCHMARK(BM_WindowComponents)->Unit(benchmark::kMicrosecond);

void BM_MomentIntegrals(benchmark::State& state) {
  const MomentContext ctx = make_moment_context(offresonant());
  for (auto _ : state) {
    benchmark::DoNotOptimize(moment_integrals(ctx, ThzState::vacuum()));
  }
}
BENCHMARK(BM_MomentIntegrals)->Unit(benchmark::kMillisecond);

void BM_ThetaSweep(benchmark::State& state) {
  const ScenarioConfig cfg = offresonant();
  const MomentModel model(make_moment_context(cfg), ThzState::vacuum());
  const auto thetas = theta_grid(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(model.sweep(thetas));
}
BENCHMARK(BM_ThetaSweep)->Unit(benchmark::kMicrosecond);

void BM_Distribution(benchmark::State& state) {
  const double N = 1e8;
  const auto grid = default_signal_grid(N, std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(distribution(N, 0.2 * N, grid));
}
BENCHMARK(BM_Distribution)->Arg(4001)->Arg(40001)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
