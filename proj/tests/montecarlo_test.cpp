#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "gen.hpp"
#include "oracle_values.hpp"
#include "parrondo/errors.hpp"
#include "parrondo/exact_engine.hpp"
#include "parrondo/montecarlo.hpp"
#include "parrondo/parallel.hpp"

using namespace parrondo;

namespace {

const GameParams kP{oracle::kP};
const GameParams kFair{{0.5, 0.5, 0.5, 0.5}};

SimConfig config(long long n, SchedulerSpec sched, GameParams p, std::uint64_t turns, std::uint64_t seed) {
  SimConfig cfg;
  cfg.n = n;
  cfg.sched = sched;
  cfg.params = p;
  cfg.turns = turns;
  cfg.seed = seed;
  return cfg;
}

bool same(const SimResult& a, const SimResult& b) {
  return a.mu_hat == b.mu_hat && a.ci_halfwidth == b.ci_halfwidth && a.pair_fixed.probs == b.pair_fixed.probs &&
         a.pair_spatial.probs == b.pair_spatial.probs && a.pair_fixed_ci == b.pair_fixed_ci &&
         a.pair_spatial_ci == b.pair_spatial_ci && a.total_profit == b.total_profit && a.turns_used == b.turns_used &&
         a.burnin_used == b.burnin_used;
}

}  // namespace

TEST(SimConfig, Validation) {
  EXPECT_THROW(validate(config(2, RandomMixture{0.5}, kP, 1000, 0)), InvalidArgument);
  EXPECT_THROW(validate(config(kMaxSimPlayers + 1, RandomMixture{0.5}, kP, 1000, 0)), InvalidArgument);
  EXPECT_THROW(validate(config(100, RandomMixture{0.5}, kP, 100, 0)), InvalidArgument);
  EXPECT_THROW(validate(config(8, RandomMixture{1.5}, kP, 10000, 0)), InvalidArgument);
  auto cfg = config(8, RandomMixture{0.5}, kP, 1000, 0);
  cfg.burnin = 1000 - 31;
  EXPECT_THROW(validate(cfg), InvalidArgument);
  cfg.burnin = 1000 - 32;
  EXPECT_NO_THROW(validate(cfg));
  EXPECT_EQ(default_burnin(8), 185u);
  EXPECT_THROW(simulate_periodic(config(8, RandomMixture{0.5}, kP, 1000, 0)), InvalidArgument);
  EXPECT_THROW(simulate_replicas(config(8, RandomMixture{0.5}, kP, 1000, 0), 0), InvalidArgument);
}

TEST(Simulate, BurnInAccounting) {
  auto cfg = config(10, PeriodicPattern{2, 1}, kP, 10000, 1);
  cfg.burnin = 100;
  const auto res = simulate_periodic(cfg);
  EXPECT_EQ(res.burnin_used, 102u);
  EXPECT_EQ(res.turns_used, 10000u - 102u);
  cfg.sched = RandomMixture{0.5};
  const auto mix = simulate(cfg);
  EXPECT_EQ(mix.burnin_used, 100u);
  EXPECT_EQ(mix.turns_used, 9900u);
  EXPECT_NEAR(mix.mu_hat, static_cast<double>(mix.total_profit) / static_cast<double>(mix.turns_used), 1e-15);
}

TEST(Simulate, Reproducible) {
  const auto cfg = config(50, RandomMixture{0.4}, kP, 200'000, 77);
  EXPECT_TRUE(same(simulate(cfg), simulate(cfg)));
  auto other = cfg;
  other.seed = 78;
  EXPECT_FALSE(same(simulate(cfg), simulate(other)));
}

TEST(Simulate, ReplicasUseDerivedSeedsAndIgnoreThreads) {
  const auto cfg = config(20, PeriodicPattern{1, 2}, kP, 50'000, 5);
  set_thread_count(1);
  const auto one = simulate_replicas(cfg, 4);
  set_thread_count(4);
  const auto four = simulate_replicas(cfg, 4);
  set_thread_count(0);
  ASSERT_EQ(one.size(), 4u);
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_TRUE(same(one[i], four[i]));
    auto single = cfg;
    single.seed = derive_seed(cfg.seed, i);
    EXPECT_TRUE(same(one[i], simulate(single)));
  }
}

TEST(Simulate, FairCoinsGiveZeroMean) {
  for (const SchedulerSpec& sched : {SchedulerSpec{RandomMixture{0.5}}, SchedulerSpec{PeriodicPattern{2, 1}},
                                     SchedulerSpec{SingleGame{Game::b}}}) {
    const auto res = simulate(config(40, sched, kFair, 400'000, 3));
    EXPECT_LE(std::abs(res.mu_hat), 3 * res.ci_halfwidth) << describe(sched);
  }
}

TEST(Simulate, PureAprimeNeverChangesWealth) {
  auto cfg = config(31, SingleGame{Game::aprime}, kP, 100'000, 4);
  cfg.audit = true;
  const auto res = simulate(cfg);
  EXPECT_EQ(res.total_profit, 0);
  EXPECT_EQ(res.mu_hat, 0.0);
  EXPECT_EQ(res.aprime_turns, 100'000u);
  EXPECT_EQ(res.aprime_nonzero_turns, 0u);
  EXPECT_EQ(res.b_turns, 0u);
  EXPECT_EQ(res.wealth_sum, 0);
}

TEST(Simulate, AuditHoldsForEverySchedule) {
  for (const SchedulerSpec& sched : {SchedulerSpec{RandomMixture{0.3}}, SchedulerSpec{PeriodicPattern{3, 2}}}) {
    auto cfg = config(12, sched, kP, 100'000, 6);
    cfg.audit = true;
    const auto res = simulate(cfg);
    EXPECT_EQ(res.aprime_nonzero_turns, 0u);
    EXPECT_EQ(res.b_bad_turns, 0u);
    EXPECT_EQ(res.aprime_turns + res.b_turns, cfg.turns);
    EXPECT_LE(std::abs(res.wealth_sum), static_cast<long long>(res.b_turns));
    auto plain = cfg;
    plain.audit = false;
    EXPECT_TRUE(same(res, simulate(plain)));
  }
}

TEST(Simulate, PeriodicCountsMatchPattern) {
  auto cfg = config(9, PeriodicPattern{2, 1}, kP, 30'000, 8);
  cfg.audit = true;
  cfg.burnin = 0;
  const auto res = simulate_periodic(cfg);
  EXPECT_EQ(res.aprime_turns, 20'000u);
  EXPECT_EQ(res.b_turns, 10'000u);
}

TEST(Simulate, MatchesExactMeanAndPair) {
  const int n = 6;
  const auto exact = mean_profit_random(n, 0.5, kP);
  const auto res = simulate(config(n, RandomMixture{0.5}, kP, 2'000'000, 9));
  EXPECT_LE(std::abs(res.mu_hat - exact.mu), 3 * res.ci_halfwidth);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_LE(std::abs(res.pair_fixed.probs[i] - exact.pair.probs[i]), 3 * res.pair_fixed_ci[i]) << i;
    EXPECT_LE(std::abs(res.pair_spatial.probs[i] - exact.pair.probs[i]), 3 * res.pair_spatial_ci[i]) << i;
  }
  EXPECT_NEAR(res.pair_fixed.total(), 1.0, 1e-12);
  EXPECT_NEAR(res.pair_spatial.total(), 1.0, 1e-12);
}

TEST(Simulate, PeriodicMatchesExactMean) {
  const int n = 7;
  const auto exact = mean_profit_periodic(n, 1, 2, kP);
  const auto res = simulate_periodic(config(n, PeriodicPattern{1, 2}, kP, 2'000'000, 10));
  EXPECT_LE(std::abs(res.mu_hat - exact.mu), 3 * res.ci_halfwidth);
}

TEST(Simulate, IntervalCoverageOverSeeds) {
  const int n = 5;
  const GameParams p{oracle::kP2};
  const double exact = mean_profit_random(n, 0.5, p).mu;
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto res = simulate(config(n, RandomMixture{0.5}, p, 100'000, 1000 + seed));
    covered += std::abs(res.mu_hat - exact) <= 3 * res.ci_halfwidth;
  }
  EXPECT_GE(covered, 95);
}

TEST(Scan, GridPoints) {
  ScanGrid grid{{0.1, 0.2}, {0.3, 0.4, 0.5}, {0.6}, {0.7, 0.8}, false};
  EXPECT_EQ(grid.points().size(), 12u);
  grid.tie_p1_p2 = true;
  const auto tied = grid.points();
  EXPECT_EQ(tied.size(), 12u);
  for (const auto& p : tied) EXPECT_EQ(p.p[1], p.p[2]);
}

TEST(Scan, ExactRecords) {
  const std::vector<GameParams> pts{kFair, GameParams{{0.6, 0.7, 0.7, 0.8}}, kP};
  ScanOptions opt;
  opt.n = 6;
  const auto recs = parrondo_scan(pts, opt);
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_FALSE(recs[0].effect);
  EXPECT_NEAR(recs[0].mu_B, 0.0, 1e-15);
  EXPECT_NEAR(recs[0].mu_C, 0.0, 1e-15);
  EXPECT_GT(recs[1].mu_B, 0.0);
  EXPECT_FALSE(recs[1].effect);
  EXPECT_NEAR(recs[2].mu_C, mean_profit_random(6, 0.5, kP).mu, 1e-12);
  EXPECT_NEAR(recs[2].mu_B, mean_profit(6, SingleGame{Game::b}, kP).mu, 1e-12);
  EXPECT_EQ(recs[2].effect, recs[2].mu_B <= 1e-12 && recs[2].mu_C > 1e-12);
  for (const auto& r : recs) EXPECT_TRUE(r.error.empty());
}

TEST(Scan, FailedPointsReportErrors) {
  const std::vector<GameParams> pts{GameParams{{0.0, 0.0, 0.0, 0.0}}};
  ScanOptions opt;
  opt.n = 4;
  const auto recs = parrondo_scan(pts, opt);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_FALSE(recs[0].error.empty());
  EXPECT_FALSE(recs[0].effect);
}

TEST(Scan, SimulatedRecordsCarryIntervals) {
  const std::vector<GameParams> pts{kFair, GameParams{{0.6, 0.7, 0.7, 0.8}}};
  ScanOptions opt;
  opt.n = 200;
  opt.method = ScanMethod::simulate;
  opt.turns = 200'000;
  const auto recs = parrondo_scan(pts, opt);
  EXPECT_GT(recs[0].ci_B, 0.0);
  EXPECT_FALSE(recs[0].effect);
  EXPECT_GT(recs[1].mu_B - 3 * recs[1].ci_B, 0.0);
  EXPECT_TRUE(parrondo_scan(pts, opt)[1].mu_C == recs[1].mu_C);
}
