#include <vector>

#include <benchmark/benchmark.h>

#include "parrondo/exact_engine.hpp"

namespace {

const parrondo::GameParams kParams{{0.1, 0.6, 0.6, 0.9}};

void BM_MixturePush(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto op = parrondo::ChainOperator::mixture(n, 0.5, kParams);
  std::vector<double> in(op.states(), 1.0 / static_cast<double>(op.states())), out(op.states()), scratch;
  for (auto _ : state) {
    op.push(in, out, scratch);
    benchmark::DoNotOptimize(out.data());
    in.swap(out);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(op.states()));
}
BENCHMARK(BM_MixturePush)->Arg(10)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_CyclePull(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto op = parrondo::ChainOperator::cycle(n, 2, 1, kParams);
  std::vector<double> g(op.states()), out(op.states()), scratch;
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<double>(__builtin_popcountll(i));
  for (auto _ : state) {
    op.pull(g, out, scratch);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(op.states()));
}
BENCHMARK(BM_CyclePull)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MeanProfitRandom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(parrondo::mean_profit_random(n, 0.5, kParams).mu);
  }
}
BENCHMARK(BM_MeanProfitRandom)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
