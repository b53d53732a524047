#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "parrondo/parallel.hpp"
#include "parrondo/rng.hpp"

using namespace parrondo;

TEST(CounterStream, RandomAccessMatchesCursor) {
  CounterStream a(42, 1), b(42, 1);
  std::vector<std::uint64_t> seq;
  for (int i = 0; i < 100; ++i) seq.push_back(a());
  for (int i = 99; i >= 0; --i) EXPECT_EQ(b.at(static_cast<std::uint64_t>(i)), seq[static_cast<std::size_t>(i)]);
  b.seek(50);
  EXPECT_EQ(b(), seq[50]);
  EXPECT_EQ(b.position(), 51u);
}

TEST(CounterStream, StreamsAndSeedsDiffer) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::uint64_t id = 0; id < 20; ++id) firsts.insert(CounterStream(seed, id).at(0));
  }
  EXPECT_EQ(firsts.size(), 400u);
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(CounterStream, UniformMoments) {
  CounterStream s(7, 3);
  const int n = 200000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sq / n, 1.0 / 3, 0.005);
}

TEST(CounterStream, BelowIsInRangeAndBalanced) {
  CounterStream s(9, 4);
  std::vector<int> counts(7);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto v = s.below(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, n / 7, 5 * std::sqrt(n / 7.0));
}

TEST(Parallel, ThreadCountSetting) {
  set_thread_count(3);
  EXPECT_EQ(thread_count(), 3);
  set_thread_count(0);
  EXPECT_GE(thread_count(), 1);
}

TEST(Parallel, ChunksCoverRangeOnce) {
  for (int threads : {1, 2, 5}) {
    set_thread_count(threads);
    std::vector<std::atomic<int>> hits(1003);
    parallel_chunks(hits.size(), 64, [&](std::size_t, std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  set_thread_count(0);
}

TEST(Parallel, OrderedSumIsThreadCountInvariant) {
  std::vector<double> v(100001);
  CounterStream s(11, 0);
  for (auto& x : v) x = (s.uniform() - 0.5) * std::pow(10.0, static_cast<double>(s.below(20)) - 10);
  set_thread_count(1);
  const double one = ordered_sum(v);
  for (int threads : {2, 3, 8}) {
    set_thread_count(threads);
    EXPECT_EQ(ordered_sum(v), one);
  }
  set_thread_count(0);
  EXPECT_NEAR(one, std::accumulate(v.begin(), v.end(), 0.0), 1e-12 * std::abs(one));
}
