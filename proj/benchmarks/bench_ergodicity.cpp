#include <benchmark/benchmark.h>

#include "parrondo/ergodicity.hpp"

namespace {

void BM_VolumeEstimate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        parrondo::volume_estimate(0.5, parrondo::VolumeConstraint::none, static_cast<std::uint64_t>(state.range(0)), 7)
            .hits);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VolumeEstimate)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_MBruteforce(benchmark::State& state) {
  const parrondo::GameParams p{{0.25, 0.7, 0.4, 0.8}};
  for (auto _ : state) benchmark::DoNotOptimize(parrondo::M_bruteforce(0.3, p));
}
BENCHMARK(BM_MBruteforce);

}  // namespace
