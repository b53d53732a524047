#pragma once

// Exact finite-N analysis of the player chains on all 2^N configurations.
//
// A state code holds site x in bit x. Transition operators are applied
// matrix-free: every output entry gathers from the <= 4N configurations that
// can reach it, so results do not depend on the worker count.
//
// Memory: the solver keeps three 2^N double vectors, 24 * 2^N bytes
// (about 400 MB at the N = 24 cap).

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parrondo/core_rules.hpp"

namespace parrondo {

using StateCode = std::uint32_t;

namespace detail {
struct DistributionAccess;
}

inline constexpr int kExactMaxPlayers = 24;
inline constexpr double kDefaultSolverTol = 1e-13;
inline constexpr long kDefaultMaxIters = 1'000'000;
// Full-state and pair-marginal mean profit must agree this closely.
inline constexpr double kFormulaAgreementTol = 1e-10;

constexpr std::size_t exact_memory_bytes(int n) {
  return 3 * (std::size_t{1} << n) * sizeof(double);
}
// Throws CapacityExceeded unless 3 <= n <= kExactMaxPlayers.
void check_exact_size(int n);

// Probability vector over the 2^n configurations of an n-player ring.
class StateDistribution {
 public:
  static StateDistribution uniform(int n);
  static StateDistribution point_mass(int n, StateCode state);
  // Validates nonnegativity and unit mass (within 1e-12).
  static StateDistribution from_weights(int n, std::vector<double> weights);

  int players() const { return n_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }
  double operator[](StateCode s) const { return weights_[s]; }

  double total_mass() const;
  // rho(dist)(eta) = dist(eta rotated back by k): the law of the rotated ring.
  StateDistribution rotated(int k) const;
  double l1_distance(const StateDistribution& other) const;

 private:
  StateDistribution(int n, std::vector<double> weights) : n_(n), weights_(std::move(weights)) {}
  friend struct detail::DistributionAccess;

  int n_;
  std::vector<double> weights_;
};

// Joint law of two sites, indexed probs[2k + l] for (eta(i), eta(j)) = (k, l).
struct PairMarginal {
  std::array<double, 4> probs{};
  double operator()(int k, int l) const { return probs[static_cast<std::size_t>(2 * k + l)]; }
  double total() const { return probs[0] + probs[1] + probs[2] + probs[3]; }
};

// One turn of a pure game, a gamma-mixture, or a whole A'^r B^s period.
class ChainOperator {
 public:
  static ChainOperator game_B(int n, const GameParams& params);
  static ChainOperator game_Aprime(int n);
  static ChainOperator mixture(int n, double gamma, const GameParams& params);
  static ChainOperator cycle(int n, int r, int s, const GameParams& params);
  static ChainOperator from_scheduler(int n, const SchedulerSpec& sched, const GameParams& params);

  int players() const { return n_; }
  std::size_t states() const { return std::size_t{1} << n_; }
  const GameParams& params() const { return params_; }
  // True when every single-turn kernel has 0 < p_m < 1, which makes the
  // chain irreducible and aperiodic for every schedule.
  bool interior() const;

  // out = in * K on probability row vectors. `scratch` is resized as needed.
  void push(std::span<const double> in, std::span<double> out, std::vector<double>& scratch) const;
  // out = K * g on functions (column vectors).
  void pull(std::span<const double> g, std::span<double> out, std::vector<double>& scratch) const;

  StateDistribution apply(const StateDistribution& dist) const;

  struct Stage {
    enum class Kind { aprime, b, mixture } kind;
    double gamma = 0.0;  // mixture only
  };
  std::span<const Stage> stages() const { return stages_; }

 private:
  ChainOperator(int n, GameParams params, std::vector<Stage> stages);
  void push_stage(const Stage& stage, std::span<const double> in, std::span<double> out) const;
  void pull_stage(const Stage& stage, std::span<const double> g, std::span<double> out) const;

  int n_;
  GameParams params_;
  std::vector<Stage> stages_;
};

StateDistribution apply_P_B(const GameParams& params, const StateDistribution& dist);
// Two-term form: a uniformly chosen adjacent pair becomes (1,0) or (0,1).
StateDistribution apply_P_Aprime(const StateDistribution& dist);
// Four-term form: scatter over all 4N (player, neighbor, outcome) duels.
// O(N 2^N) Configuration updates; meant for cross-checking at small N.
StateDistribution apply_P_Aprime_four_term(const StateDistribution& dist);
StateDistribution apply_mixture(double gamma, const GameParams& params, const StateDistribution& dist);
// dist * P_A'^r * P_B^s.
StateDistribution cycle_operator(int r, int s, const GameParams& params, const StateDistribution& dist);

// A row of P_A' as successor multiplicities. The four-term row counts the 4N
// duel events (probability count / 4N); the two-term row counts the 2N
// pair-reset events eta^{x,-1}, eta^{x,+1} (probability count / 2N).
struct SuccessorCount {
  StateCode state;
  int count;
  bool operator==(const SuccessorCount&) const = default;
};
std::vector<SuccessorCount> aprime_row_four_term(int n, StateCode state);
std::vector<SuccessorCount> aprime_row_two_term(int n, StateCode state);

struct SolverOptions {
  double tol = kDefaultSolverTol;
  long max_iters = kDefaultMaxIters;
  // Every stall_window iterations the residual must at least halve; if it
  // does not, switch to the damped iteration (K + I) / 2, and give up once
  // the damped residual stops falling.
  long stall_window = 2000;
  enum class IrreducibilityCheck { automatic, always, never };
  // automatic: check only when some p_m is 0 or 1.
  IrreducibilityCheck irreducibility = IrreducibilityCheck::automatic;
};

struct StationaryResult {
  StateDistribution pi;
  double residual;  // ||pi K - pi||_1
  long iterations;
  bool damped;
};

// Power iteration from the uniform law. Throws NotConverged, or
// NotIrreducible when the requested check fails.
StationaryResult stationary(const ChainOperator& op, const SolverOptions& options = {});

// Strong connectivity of the positive-probability transition graph.
bool irreducible(const ChainOperator& op);

// Joint law of (eta(i), eta(j)), 0 <= i, j < n, i != j.
PairMarginal pair_marginal(const StateDistribution& dist, int i, int j);
// Law of (eta(-1), eta(+1)) around label 0, i.e. indices n-1 and 1.
PairMarginal neighbor_pair_marginal(const StateDistribution& dist);

// E[(1/N) sum_x (2 p_{m_x(eta)} - 1)]: expected profit of one B turn.
double expected_b_turn_profit(const GameParams& params, const StateDistribution& dist);
// sum_{k,l} pair(k,l) (2 p_{2k+l} - 1).
double pair_b_turn_profit(const GameParams& params, const PairMarginal& pair);

struct MeanProfit {
  double mu = 0.0;             // full-state formula
  double mu_pair = 0.0;        // pair-marginal formula
  double formula_delta = 0.0;  // |mu - mu_pair|
  double solver_residual = 0.0;
  long iterations = 0;
  PairMarginal pair{};  // (eta(-1), eta(+1)) under the stationary law
};

MeanProfit mean_profit_random(int n, double gamma, const GameParams& params,
                              const SolverOptions& options = {});
// Profit measured from the start of the A' block: v = 0..s-1 B turns after r A' turns.
MeanProfit mean_profit_periodic(int n, int r, int s, const GameParams& params,
                                const SolverOptions& options = {});
// Dispatch on the schedule; pure A' is exactly 0 without solving.
MeanProfit mean_profit(int n, const SchedulerSpec& sched, const GameParams& params,
                       const SolverOptions& options = {});

struct ConvergenceRow {
  int n;
  std::optional<MeanProfit> value;
  std::optional<double> delta;  // mu^n minus mu of the previous row
  std::string error;
};
std::vector<ConvergenceRow> convergence_table(const GameParams& params, const SchedulerSpec& sched,
                                              std::span<const int> n_values,
                                              const SolverOptions& options = {});

}  // namespace parrondo
