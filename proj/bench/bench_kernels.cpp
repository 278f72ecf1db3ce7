// Serial reference vs OpenMP for the parallel kernels.

#include <benchmark/benchmark.h>

#include "wreslab/generators.hpp"
#include "wreslab/suites.hpp"

using namespace wreslab;

namespace {

ClassicalSymbol<C64> spectral_start() {
  Rng rng = trial_rng(3, 0);
  const auto sys = gen::random_first_order_system(rng, 2);
  return embed(positive_spectral_projection_symbol(sys.a, sys.b), 6);
}

void contour(benchmark::State& state, parallel::Execution ex) {
  const auto x0 = spectral_start();
  const int nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(contour_lift(x0, nodes, ex));
}

void battery(benchmark::State& state, parallel::Execution ex) {
  SuiteConfig cfg;
  cfg.name = "trace";
  cfg.trials = static_cast<int>(state.range(0));
  cfg.execution = ex;
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(cfg));
}

}  // namespace

BENCHMARK_CAPTURE(contour, serial, parallel::Execution::serial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(contour, omp, parallel::Execution::omp)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(battery, serial, parallel::Execution::serial)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(battery, omp, parallel::Execution::omp)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
