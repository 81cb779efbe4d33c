#include <benchmark/benchmark.h>

#include "tbctl/optimizer.hpp"
#include "tbctl/scenario.hpp"

namespace {

using namespace tbctl;

void BM_SweepBaseline(benchmark::State& st) {
  const Parameters p;
  SweepConfig cfg;
  cfg.grid.n_steps = static_cast<std::size_t>(st.range(0));
  for (auto _ : st)
    benchmark::DoNotOptimize(fbs_solve(p, initial_state(p), {500, 50}, CostKind::kJ, cfg));
}
BENCHMARK(BM_SweepBaseline)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_CatalogSweep(benchmark::State& st) {
  ScenarioSpec base;
  const std::vector<double> betas{75, 100, 125, 150, 175, 200, 225, 250};
  for (auto _ : st)
    benchmark::DoNotOptimize(run_sweep(base, "beta", betas, {}, static_cast<std::size_t>(st.range(0))));
}
BENCHMARK(BM_CatalogSweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
