#include <benchmark/benchmark.h>

#include "fluxks/chemo.hpp"
#include "fluxks/dynamics.hpp"

using namespace fluxks;

namespace {

std::vector<double> smooth_field(const RadialGrid& g) {
  U0Spec spec;
  spec.mass = 3.0;
  spec.amplitude = 0.5;
  return sample_u0(g, spec);
}

void BM_reconstruct(benchmark::State& state) {
  const RadialGrid g = make_grid(2, 1.0, int(state.range(0)));
  const std::vector<double> u = smooth_field(g);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(g, u));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_rhs_divergence(benchmark::State& state) {
  const RadialGrid g = make_grid(2, 1.0, int(state.range(0)));
  const std::vector<double> u = smooth_field(g);
  StepWorkspace ws;
  ws.resize(g.ncells);
  std::vector<double> dudt(g.ncells);
  for (auto _ : state) {
    rhs_divergence(g, u, 0.5, ws, dudt);
    benchmark::DoNotOptimize(dudt.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_stable_dt(benchmark::State& state) {
  const RadialGrid g = make_grid(2, 1.0, int(state.range(0)));
  const std::vector<double> u = smooth_field(g);
  for (auto _ : state) benchmark::DoNotOptimize(stable_dt(g, u, 0.5, 0.9));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_step(benchmark::State& state) {
  const RadialGrid g = make_grid(2, 1.0, int(state.range(0)));
  SimState s;
  s.u = smooth_field(g);
  s.mu = mass(g, s.u) / g.domain_measure;
  const double dt = stable_dt(g, s.u, 0.5, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(step(g, s, 0.5, dt));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_reconstruct)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_rhs_divergence)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_stable_dt)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_step)->Arg(64)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
