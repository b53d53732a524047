#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace parrondo {

// Worker threads used by the engines; 0 means all hardware threads.
void set_thread_count(int threads);
int thread_count();

// Runs fn(chunk, begin, end) over [0, size) cut into chunks of `grain`
// elements. Chunk boundaries depend only on size and grain, so per-chunk
// results combined in chunk order are identical for any thread count.
void parallel_chunks(std::size_t size, std::size_t grain,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

// Sum with a fixed chunked reduction order.
double ordered_sum(std::span<const double> values);

}  // namespace parrondo
