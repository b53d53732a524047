#pragma once

// Path simulation of the N-player chains for N far beyond the exact cap.
//
// Randomness comes from four counter streams derived from the seed (site,
// game, neighbor, coin), each indexed by the global turn number, so two runs
// with the same seed and different schedules share their site choices.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parrondo/core_rules.hpp"
#include "parrondo/exact_engine.hpp"

namespace parrondo {

inline constexpr long long kMaxSimPlayers = 10'000'000;
inline constexpr int kBatches = 32;
// Two-sided 95% Student t quantile with kBatches - 1 degrees of freedom.
inline constexpr double kBatchT = 2.0395134463964077;

// 10 n ln(2 + n), rounded up: a heuristic, not a mixing-time bound.
std::uint64_t default_burnin(long long n);

struct SimConfig {
  long long n = 0;
  SchedulerSpec sched = RandomMixture{0.5};
  GameParams params;
  std::uint64_t turns = 0;
  std::optional<std::uint64_t> burnin;  // default_burnin(n) when empty
  std::uint64_t seed = 0;
  // Tracks each player's wealth and checks per-turn conservation.
  bool audit = false;
};

void validate(const SimConfig& cfg);

struct SimResult {
  double mu_hat = 0.0;        // collective profit per turn after burn-in
  double ci_halfwidth = 0.0;  // batch-means 95% half-width
  // Time average of the law of (eta(-1), eta(+1)) around index 0.
  PairMarginal pair_fixed;
  std::array<double, 4> pair_fixed_ci{};
  // Time average over all x of the law of (eta(x-1), eta(x+1)).
  PairMarginal pair_spatial;
  std::array<double, 4> pair_spatial_ci{};
  std::uint64_t turns_used = 0;  // measured turns
  std::uint64_t burnin_used = 0;
  long long total_profit = 0;    // over measured turns
  // Audit mode only.
  std::uint64_t aprime_turns = 0;
  std::uint64_t aprime_nonzero_turns = 0;  // A' turns whose collective profit was not 0
  std::uint64_t b_turns = 0;
  std::uint64_t b_bad_turns = 0;           // B turns whose collective profit was not +-1
  long long wealth_sum = 0;                // sum of per-player wealth over all turns
};

SimResult simulate(const SimConfig& cfg);
// Requires a PeriodicPattern schedule: r A' turns then s B turns, repeated.
SimResult simulate_periodic(const SimConfig& cfg);
// Replica i runs with seed derive_seed(cfg.seed, i); replicas run in parallel.
std::vector<SimResult> simulate_replicas(const SimConfig& cfg, int replicas);

// Cartesian grid over p0..p3; with tie_p1_p2 the p2 axis is ignored and p2 = p1.
struct ScanGrid {
  std::vector<double> p0, p1, p2, p3;
  bool tie_p1_p2 = false;

  std::vector<GameParams> points() const;
};

enum class ScanMethod { exact, simulate };

struct ScanOptions {
  long long n = 8;
  SchedulerSpec sched = RandomMixture{0.5};  // schedule of the combined game C'
  ScanMethod method = ScanMethod::exact;
  std::uint64_t turns = 1'000'000;
  std::uint64_t seed = 0;
  SolverOptions solver;
};

struct ScanRecord {
  GameParams params;
  double mu_B = 0.0;
  double ci_B = 0.0;  // 0 for exact results
  double mu_C = 0.0;
  double ci_C = 0.0;
  // B is losing or fair and C' is winning, both beyond the uncertainty.
  bool effect = false;
  double ergodic_margin = 0.0;  // 1 - lhs of the gamma condition, gamma = A' fraction
  bool ergodic = false;
  std::string error;            // nonempty when the point failed
};

// Exact results use tolerance 1e-12 in place of a confidence interval.
std::vector<ScanRecord> parrondo_scan(std::span<const GameParams> points, const ScanOptions& options);

}  // namespace parrondo
