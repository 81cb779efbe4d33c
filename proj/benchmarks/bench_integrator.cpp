#include <benchmark/benchmark.h>

#include "tbctl/integrator.hpp"
#include "tbctl/optimizer.hpp"

namespace {

using namespace tbctl;

void BM_StateForward(benchmark::State& st) {
  const Parameters p;
  const TimeGrid g{0.0, 5.0, static_cast<std::size_t>(st.range(0))};
  const auto controls = ControlGrid::constant(g, {0.5, 0.5});
  const StateRhs f = [&p](const State& x, const ControlValue& u) { return rhs_unchecked(x, u, p); };
  for (auto _ : st) benchmark::DoNotOptimize(rk4_forward(f, initial_state(p), g, controls));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_StateForward)->Arg(500)->Arg(5000)->Arg(50000);

void BM_AdjointBackward(benchmark::State& st) {
  const Parameters p;
  const TimeGrid g{0.0, 5.0, static_cast<std::size_t>(st.range(0))};
  const auto controls = ControlGrid::constant(g, {0.5, 0.5});
  const SolveResult fwd = simulate(p, initial_state(p), {500, 50}, CostKind::kJ, controls);
  const AdjointRhs f = [&p](const State& x, const Costate& l, const ControlValue& u) {
    return adjoint_rhs(x, l, u, p, CostKind::kJ);
  };
  for (auto _ : st) benchmark::DoNotOptimize(rk4_backward(f, Costate{}, g, fwd.states, controls));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_AdjointBackward)->Arg(500)->Arg(5000);

}  // namespace

BENCHMARK_MAIN();
