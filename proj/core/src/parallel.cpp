#include "parrondo/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace parrondo {

namespace {
std::atomic<int> g_threads{0};
constexpr std::size_t kSumGrain = 4096;
}  // namespace

void set_thread_count(int threads) { g_threads.store(std::max(0, threads)); }

int thread_count() {
  const int t = g_threads.load();
  if (t > 0) return t;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_chunks(std::size_t size, std::size_t grain,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (size == 0) return;
  grain = std::max<std::size_t>(grain, 1);
  const std::size_t chunks = (size + grain - 1) / grain;
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c, c * grain, std::min(size, (c + 1) * grain));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
      fn(c, c * grain, std::min(size, (c + 1) * grain));
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
}

double ordered_sum(std::span<const double> values) {
  const std::size_t chunks = (values.size() + kSumGrain - 1) / kSumGrain;
  std::vector<double> partial(chunks, 0.0);
  parallel_chunks(values.size(), kSumGrain, [&](std::size_t c, std::size_t b, std::size_t e) {
    double acc = 0.0;
    for (std::size_t i = b; i < e; ++i) acc += values[i];
    partial[c] = acc;
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

}  // namespace parrondo
