#include <benchmark/benchmark.h>

#include "tbctl/reproduction.hpp"

namespace {

using namespace tbctl;

void BM_ClosedForm(benchmark::State& st) {
  const Parameters p;
  for (auto _ : st) benchmark::DoNotOptimize(r0_closed_form(p, 0.3, 0.7));
}
BENCHMARK(BM_ClosedForm);

void BM_NextGeneration(benchmark::State& st) {
  const Parameters p;
  for (auto _ : st) benchmark::DoNotOptimize(r0_ngm(p, 0.3, 0.7));
}
BENCHMARK(BM_NextGeneration);

void BM_NumericSensitivity(benchmark::State& st) {
  const Parameters p;
  for (auto _ : st) benchmark::DoNotOptimize(sensitivity_numeric(p, "tau0", 0.3, 0.7));
}
BENCHMARK(BM_NumericSensitivity);

}  // namespace

BENCHMARK_MAIN();
