#include <benchmark/benchmark.h>

#include "parrondo/montecarlo.hpp"

namespace {

void BM_SimulateMixture(benchmark::State& state) {
  parrondo::SimConfig cfg;
  cfg.n = state.range(0);
  cfg.params = parrondo::GameParams{{0.1, 0.6, 0.6, 0.9}};
  cfg.turns = 1'000'000;
  cfg.burnin = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(parrondo::simulate(cfg).mu_hat);
    ++cfg.seed;
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.turns));
}
BENCHMARK(BM_SimulateMixture)->Arg(8)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_SimulatePeriodicAudit(benchmark::State& state) {
  parrondo::SimConfig cfg;
  cfg.n = 1000;
  cfg.sched = parrondo::PeriodicPattern{2, 1};
  cfg.params = parrondo::GameParams{{0.1, 0.6, 0.6, 0.9}};
  cfg.turns = 1'000'000;
  cfg.burnin = 0;
  cfg.audit = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(parrondo::simulate_periodic(cfg).mu_hat);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.turns));
}
BENCHMARK(BM_SimulatePeriodicAudit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
