#include "parrondo/exact_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "parrondo/errors.hpp"
#include "parrondo/parallel.hpp"
#include "ring_bits.hpp"

namespace parrondo {

namespace detail {
struct DistributionAccess {
  static StateDistribution make(int n, std::vector<double> weights) {
    return StateDistribution(n, std::move(weights));
  }
};
}  // namespace detail

namespace {

using detail::DistributionAccess;

constexpr std::size_t kGrain = std::size_t{1} << 12;

struct BRates {
  std::array<double, 8> flip;  // c(x, eta) by local pattern
  std::array<double, 8> stay;  // 1 - c(x, eta)
};

BRates b_rates(const GameParams& params) {
  BRates rates{};
  for (int pat = 0; pat < 8; ++pat) {
    const double c = rate_B_local(params, pat >> 2, (pat >> 1) & 1, pat & 1);
    rates.flip[static_cast<std::size_t>(pat)] = c;
    rates.stay[static_cast<std::size_t>(pat)] = 1.0 - c;
  }
  return rates;
}

// (dist * P_B)(zeta) = (1/N) sum_x [dist(zeta_x) c(x, zeta_x) + dist(zeta)(1 - c(x, zeta))].
inline double gather_b(const BRates& rates, std::span<const double> in, ring::Code z, int n) {
  const ring::Code left = ring::left_neighbors(z, n);
  const ring::Code right = ring::right_neighbors(z, n);
  double moved = 0.0;
  double stay = 0.0;
  for (int x = 0; x < n; ++x) {
    const int pat = ring::pattern(z, left, right, x);
    moved += in[z ^ (ring::Code{1} << x)] * rates.flip[static_cast<std::size_t>(pat ^ 2)];
    stay += rates.stay[static_cast<std::size_t>(pat)];
  }
  return (moved + in[z] * stay) / n;
}

// (dist * P_A')(zeta) = (1/2N) sum over discordant pairs (y, y+1) of zeta of
// the mass of the four configurations that agree with zeta off the pair.
inline double gather_aprime(std::span<const double> in, ring::Code z, int n) {
  double acc = 0.0;
  for (int y = 0; y < n; ++y) {
    const int w = ring::wrap(y + 1, n);
    if (ring::bit(z, y) == ring::bit(z, w)) continue;
    const ring::Code a = ring::Code{1} << y;
    const ring::Code b = ring::Code{1} << w;
    const ring::Code base = z & ~(a | b);
    acc += in[base] + in[base | a] + in[base | b] + in[base | a | b];
  }
  return acc / (2.0 * n);
}

// (P_B g)(eta) = (1/N) sum_x [c(x, eta) g(eta_x) + (1 - c(x, eta)) g(eta)].
inline double pull_b_at(const BRates& rates, std::span<const double> g, ring::Code s, int n) {
  const ring::Code left = ring::left_neighbors(s, n);
  const ring::Code right = ring::right_neighbors(s, n);
  double moved = 0.0;
  double stay = 0.0;
  for (int x = 0; x < n; ++x) {
    const int pat = ring::pattern(s, left, right, x);
    moved += rates.flip[static_cast<std::size_t>(pat)] * g[s ^ (ring::Code{1} << x)];
    stay += rates.stay[static_cast<std::size_t>(pat)];
  }
  return (moved + stay * g[s]) / n;
}

// (P_A' g)(eta) = (1/2N) sum_y [g(pair y -> (1,0)) + g(pair y -> (0,1))].
inline double pull_aprime_at(std::span<const double> g, ring::Code s, int n) {
  double acc = 0.0;
  for (int y = 0; y < n; ++y) {
    acc += g[ring::set_pair(s, y, n, 1, 0)] + g[ring::set_pair(s, y, n, 0, 1)];
  }
  return acc / (2.0 * n);
}

double l1_diff(std::span<const double> a, std::span<const double> b) {
  const std::size_t chunks = (a.size() + kGrain - 1) / kGrain;
  std::vector<double> partial(chunks, 0.0);
  parallel_chunks(a.size(), kGrain, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += std::abs(a[i] - b[i]);
    partial[c] = acc;
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

void scale(std::span<double> v, double factor) {
  parallel_chunks(v.size(), kGrain, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) v[i] *= factor;
  });
}

ring::Code rotate_code(ring::Code s, int k, int n) {
  k = ((k % n) + n) % n;
  if (k == 0) return s;
  return ((s << k) | (s >> (n - k))) & ring::mask(n);
}

void check_distribution(const StateDistribution& dist) { check_exact_size(dist.players()); }

void require_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw InvalidArgument("gamma must lie in (0,1), got " + std::to_string(gamma));
  }
}

void require_period(int r, int s) {
  if (r < 1 || s < 1) throw InvalidArgument("periodic pattern needs r, s >= 1");
}

// Marks successors (forward) or predecessors (backward) of `from` under one
// stage into `next`, skipping states already stamped with `epoch`.
class ReachSweep {
 public:
  ReachSweep(const ChainOperator& op) : op_(op), n_(op.players()), rates_(b_rates(op.params())) {}

  std::size_t count_reachable(bool forward) {
    const std::size_t size = op_.states();
    std::vector<std::uint8_t> seen(size, 0);
    std::vector<std::uint32_t> stamp(size, 0);
    std::uint32_t epoch = 0;
    std::vector<ring::Code> frontier{0};
    seen[0] = 1;
    std::size_t reached = 1;
    const auto stages = op_.stages();
    while (!frontier.empty()) {
      std::vector<ring::Code> layer = frontier;
      // The forward image applies stages in order; the backward preimage in reverse.
      for (std::size_t k = 0; k < stages.size(); ++k) {
        const auto& stage = forward ? stages[k] : stages[stages.size() - 1 - k];
        ++epoch;
        std::vector<ring::Code> next;
        auto emit = [&](ring::Code t) {
          if (stamp[t] != epoch) {
            stamp[t] = epoch;
            next.push_back(t);
          }
        };
        for (ring::Code s : layer) visit(stage, s, forward, emit);
        layer = std::move(next);
      }
      frontier.clear();
      for (ring::Code t : layer) {
        if (!seen[t]) {
          seen[t] = 1;
          ++reached;
          frontier.push_back(t);
        }
      }
    }
    return reached;
  }

 private:
  template <class Emit>
  void visit(const ChainOperator::Stage& stage, ring::Code s, bool forward, Emit& emit) const {
    using Kind = ChainOperator::Stage::Kind;
    if (stage.kind == Kind::aprime || stage.kind == Kind::mixture) {
      for (int y = 0; y < n_; ++y) {
        if (forward) {
          emit(ring::set_pair(s, y, n_, 1, 0));
          emit(ring::set_pair(s, y, n_, 0, 1));
        } else if (ring::bit(s, y) != ring::bit(s, ring::wrap(y + 1, n_))) {
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) emit(ring::set_pair(s, y, n_, a, b));
        }
      }
    }
    if (stage.kind == Kind::b || stage.kind == Kind::mixture) {
      const ring::Code left = ring::left_neighbors(s, n_);
      const ring::Code right = ring::right_neighbors(s, n_);
      bool self_loop = false;
      for (int x = 0; x < n_; ++x) {
        const int pat = ring::pattern(s, left, right, x);
        // Forward: s -> s_x needs c(x, s) > 0. Backward: s_x -> s needs c(x, s_x) > 0.
        const double c = rates_.flip[static_cast<std::size_t>(forward ? pat : pat ^ 2)];
        if (c > 0.0) emit(s ^ (ring::Code{1} << x));
        if (rates_.stay[static_cast<std::size_t>(pat)] > 0.0) self_loop = true;
      }
      if (self_loop) emit(s);
    }
  }

  const ChainOperator& op_;
  int n_;
  BRates rates_;
};

}  // namespace

void check_exact_size(int n) {
  if (n < kMinPlayers) {
    throw InvalidArgument("a ring needs at least 3 players, got " + std::to_string(n));
  }
  if (n > kExactMaxPlayers) {
    throw CapacityExceeded("exact analysis is capped at N = " + std::to_string(kExactMaxPlayers) +
                           " (" + std::to_string(exact_memory_bytes(kExactMaxPlayers) >> 20) +
                           " MiB); got N = " + std::to_string(n));
  }
}

// ---------------------------------------------------------------------------
// StateDistribution

StateDistribution StateDistribution::uniform(int n) {
  check_exact_size(n);
  const std::size_t size = std::size_t{1} << n;
  return StateDistribution(n, std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

StateDistribution StateDistribution::point_mass(int n, StateCode state) {
  check_exact_size(n);
  const std::size_t size = std::size_t{1} << n;
  if (state >= size) throw InvalidArgument("state code out of range");
  std::vector<double> w(size, 0.0);
  w[state] = 1.0;
  return StateDistribution(n, std::move(w));
}

StateDistribution StateDistribution::from_weights(int n, std::vector<double> weights) {
  check_exact_size(n);
  if (weights.size() != (std::size_t{1} << n)) {
    throw InvalidArgument("distribution over " + std::to_string(n) + " players needs 2^" +
                          std::to_string(n) + " weights");
  }
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidArgument("weights must be finite and nonnegative");
  }
  StateDistribution dist(n, std::move(weights));
  if (std::abs(dist.total_mass() - 1.0) > 1e-12) {
    throw InvalidArgument("weights must sum to 1 (got " + std::to_string(dist.total_mass()) + ")");
  }
  return dist;
}

double StateDistribution::total_mass() const { return ordered_sum(weights_); }

StateDistribution StateDistribution::rotated(int k) const {
  std::vector<double> out(weights_.size());
  for (std::size_t s = 0; s < weights_.size(); ++s) {
    out[rotate_code(static_cast<ring::Code>(s), k, n_)] = weights_[s];
  }
  return StateDistribution(n_, std::move(out));
}

double StateDistribution::l1_distance(const StateDistribution& other) const {
  if (other.n_ != n_) throw InvalidArgument("distributions over different rings");
  return l1_diff(weights_, other.weights_);
}

// ---------------------------------------------------------------------------
// ChainOperator

ChainOperator::ChainOperator(int n, GameParams params, std::vector<Stage> stages)
    : n_(n), params_(params), stages_(std::move(stages)) {
  check_exact_size(n);
  validate(params_);
}

ChainOperator ChainOperator::game_B(int n, const GameParams& params) {
  return ChainOperator(n, params, {Stage{Stage::Kind::b}});
}

ChainOperator ChainOperator::game_Aprime(int n) {
  return ChainOperator(n, GameParams{}, {Stage{Stage::Kind::aprime}});
}

ChainOperator ChainOperator::mixture(int n, double gamma, const GameParams& params) {
  require_gamma(gamma);
  return ChainOperator(n, params, {Stage{Stage::Kind::mixture, gamma}});
}

ChainOperator ChainOperator::cycle(int n, int r, int s, const GameParams& params) {
  require_period(r, s);
  std::vector<Stage> stages(static_cast<std::size_t>(r), Stage{Stage::Kind::aprime});
  stages.insert(stages.end(), static_cast<std::size_t>(s), Stage{Stage::Kind::b});
  return ChainOperator(n, params, std::move(stages));
}

ChainOperator ChainOperator::from_scheduler(int n, const SchedulerSpec& sched,
                                            const GameParams& params) {
  validate(sched);
  if (const auto* mix = std::get_if<RandomMixture>(&sched)) return mixture(n, mix->gamma, params);
  if (const auto* per = std::get_if<PeriodicPattern>(&sched)) return cycle(n, per->r, per->s, params);
  return std::get<SingleGame>(sched).game == Game::aprime ? game_Aprime(n) : game_B(n, params);
}

bool ChainOperator::interior() const {
  const bool has_b = std::any_of(stages_.begin(), stages_.end(),
                                 [](const Stage& st) { return st.kind != Stage::Kind::aprime; });
  return has_b && params_.interior();
}

void ChainOperator::push_stage(const Stage& stage, std::span<const double> in,
                               std::span<double> out) const {
  const int n = n_;
  const BRates rates = b_rates(params_);
  parallel_chunks(states(), kGrain, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto z = static_cast<ring::Code>(i);
      switch (stage.kind) {
        case Stage::Kind::aprime:
          out[i] = gather_aprime(in, z, n);
          break;
        case Stage::Kind::b:
          out[i] = gather_b(rates, in, z, n);
          break;
        case Stage::Kind::mixture:
          out[i] = stage.gamma * gather_aprime(in, z, n) + (1.0 - stage.gamma) * gather_b(rates, in, z, n);
          break;
      }
    }
  });
}

void ChainOperator::pull_stage(const Stage& stage, std::span<const double> g,
                               std::span<double> out) const {
  const int n = n_;
  const BRates rates = b_rates(params_);
  parallel_chunks(states(), kGrain, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto s = static_cast<ring::Code>(i);
      switch (stage.kind) {
        case Stage::Kind::aprime:
          out[i] = pull_aprime_at(g, s, n);
          break;
        case Stage::Kind::b:
          out[i] = pull_b_at(rates, g, s, n);
          break;
        case Stage::Kind::mixture:
          out[i] = stage.gamma * pull_aprime_at(g, s, n) + (1.0 - stage.gamma) * pull_b_at(rates, g, s, n);
          break;
      }
    }
  });
}

void ChainOperator::push(std::span<const double> in, std::span<double> out,
                         std::vector<double>& scratch) const {
  const std::size_t m = stages_.size();
  if (m > 1) scratch.resize(states());
  std::span<const double> src = in;
  for (std::size_t k = 0; k < m; ++k) {
    // Alternate targets so that the last stage lands in `out`.
    std::span<double> dst = ((m - 1 - k) % 2 == 0) ? out : std::span<double>(scratch);
    push_stage(stages_[k], src, dst);
    src = dst;
  }
}

void ChainOperator::pull(std::span<const double> g, std::span<double> out,
                         std::vector<double>& scratch) const {
  const std::size_t m = stages_.size();
  if (m > 1) scratch.resize(states());
  std::span<const double> src = g;
  for (std::size_t k = 0; k < m; ++k) {
    std::span<double> dst = ((m - 1 - k) % 2 == 0) ? out : std::span<double>(scratch);
    pull_stage(stages_[m - 1 - k], src, dst);
    src = dst;
  }
}

StateDistribution ChainOperator::apply(const StateDistribution& dist) const {
  if (dist.players() != n_) throw InvalidArgument("distribution and operator sizes differ");
  std::vector<double> out(states());
  std::vector<double> scratch;
  push(dist.weights(), out, scratch);
  return DistributionAccess::make(n_, std::move(out));
}

// ---------------------------------------------------------------------------
// Named operators

StateDistribution apply_P_B(const GameParams& params, const StateDistribution& dist) {
  check_distribution(dist);
  return ChainOperator::game_B(dist.players(), params).apply(dist);
}

StateDistribution apply_P_Aprime(const StateDistribution& dist) {
  check_distribution(dist);
  return ChainOperator::game_Aprime(dist.players()).apply(dist);
}

StateDistribution apply_P_Aprime_four_term(const StateDistribution& dist) {
  const int n = dist.players();
  check_exact_size(n);
  std::vector<double> out(dist.size(), 0.0);
  const double weight = 1.0 / (4.0 * n);
  for (std::size_t s = 0; s < dist.size(); ++s) {
    if (dist[static_cast<StateCode>(s)] == 0.0) continue;
    for (const auto& succ : aprime_row_four_term(n, static_cast<StateCode>(s))) {
      out[succ.state] += dist[static_cast<StateCode>(s)] * (succ.count * weight);
    }
  }
  return DistributionAccess::make(n, std::move(out));
}

StateDistribution apply_mixture(double gamma, const GameParams& params, const StateDistribution& dist) {
  check_distribution(dist);
  return ChainOperator::mixture(dist.players(), gamma, params).apply(dist);
}

StateDistribution cycle_operator(int r, int s, const GameParams& params, const StateDistribution& dist) {
  check_distribution(dist);
  return ChainOperator::cycle(dist.players(), r, s, params).apply(dist);
}

namespace {
std::vector<SuccessorCount> to_counts(const std::map<StateCode, int>& counts) {
  std::vector<SuccessorCount> out;
  out.reserve(counts.size());
  for (const auto& [state, count] : counts) out.push_back({state, count});
  return out;
}
}  // namespace

std::vector<SuccessorCount> aprime_row_four_term(int n, StateCode state) {
  check_exact_size(n);
  const Configuration cfg(n, state);
  std::map<StateCode, int> counts;
  for (int x = 0; x < n; ++x) {
    for (Side side : {Side::left, Side::right}) {
      for (Outcome outcome : {Outcome::lose, Outcome::win}) {
        ++counts[static_cast<StateCode>(duel(cfg, x, side, outcome).code())];
      }
    }
  }
  return to_counts(counts);
}

std::vector<SuccessorCount> aprime_row_two_term(int n, StateCode state) {
  check_exact_size(n);
  const Configuration cfg(n, state);
  std::map<StateCode, int> counts;
  for (int x = 0; x < n; ++x) {
    // eta^{x,-1}: x-1 becomes a winner, x a loser.
    Configuration lost_left = cfg;
    lost_left.set(x - 1L, 1);
    lost_left.set(x, 0);
    ++counts[static_cast<StateCode>(lost_left.code())];
    // eta^{x,1}: x becomes a loser, x+1 a winner.
    Configuration lost_right = cfg;
    lost_right.set(x, 0);
    lost_right.set(x + 1L, 1);
    ++counts[static_cast<StateCode>(lost_right.code())];
  }
  return to_counts(counts);
}

// ---------------------------------------------------------------------------
// Stationary laws

bool irreducible(const ChainOperator& op) {
  ReachSweep sweep(op);
  const std::size_t size = op.states();
  return sweep.count_reachable(true) == size && sweep.count_reachable(false) == size;
}

StationaryResult stationary(const ChainOperator& op, const SolverOptions& options) {
  using Check = SolverOptions::IrreducibilityCheck;
  const bool check = options.irreducibility == Check::always ||
                     (options.irreducibility == Check::automatic && !op.interior());
  if (check && !irreducible(op)) {
    throw NotIrreducible("transition graph is not strongly connected (N = " +
                         std::to_string(op.players()) + "); the stationary law may not be unique");
  }

  const std::size_t size = op.states();
  std::vector<double> x(size, 1.0 / static_cast<double>(size));
  std::vector<double> y(size);
  std::vector<double> scratch;

  bool damped = false;
  double window_start = std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  long it = 0;
  while (it < options.max_iters) {
    ++it;
    op.push(x, y, scratch);
    if (damped) {
      parallel_chunks(size, kGrain, [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) y[i] = 0.5 * (y[i] + x[i]);
      });
    }
    const double mass = ordered_sum(y);
    if (mass > 0.0) scale(y, 1.0 / mass);
    // ||x K - x||_1; the damped step moves half as far.
    residual = l1_diff(y, x) * (damped ? 2.0 : 1.0);
    x.swap(y);
    if (residual <= options.tol) break;

    if (it % options.stall_window == 0) {
      if (residual > 0.5 * window_start) {
        if (damped && residual >= window_start) throw NotConverged(it, residual);
        damped = true;
      }
      window_start = residual;
    }
  }
  if (residual > options.tol) throw NotConverged(it, residual);

  // Report the true residual of the returned vector.
  op.push(x, y, scratch);
  const double final_residual = l1_diff(y, x);
  return StationaryResult{DistributionAccess::make(op.players(), std::move(x)), final_residual, it, damped};
}

// ---------------------------------------------------------------------------
// Marginals and profits

PairMarginal pair_marginal(const StateDistribution& dist, int i, int j) {
  const int n = dist.players();
  if (i < 0 || i >= n || j < 0 || j >= n) throw InvalidArgument("pair marginal site out of range");
  if (i == j) throw InvalidArgument("pair marginal needs two distinct sites");
  PairMarginal pm;
  for (std::size_t s = 0; s < dist.size(); ++s) {
    const auto code = static_cast<ring::Code>(s);
    pm.probs[static_cast<std::size_t>(2 * ring::bit(code, i) + ring::bit(code, j))] += dist[code];
  }
  return pm;
}

PairMarginal neighbor_pair_marginal(const StateDistribution& dist) {
  const int n = dist.players();
  return pair_marginal(dist, index_of(n, -1), index_of(n, 1));
}

double expected_b_turn_profit(const GameParams& params, const StateDistribution& dist) {
  const int n = dist.players();
  std::array<double, 4> gain{};
  for (int m = 0; m < 4; ++m) gain[static_cast<std::size_t>(m)] = 2.0 * params.p[static_cast<std::size_t>(m)] - 1.0;
  const std::size_t chunks = (dist.size() + kGrain - 1) / kGrain;
  std::vector<double> partial(chunks, 0.0);
  parallel_chunks(dist.size(), kGrain, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const auto s = static_cast<ring::Code>(i);
      const ring::Code left = ring::left_neighbors(s, n);
      const ring::Code right = ring::right_neighbors(s, n);
      double turn = 0.0;
      for (int x = 0; x < n; ++x) {
        turn += gain[static_cast<std::size_t>(2 * ring::bit(left, x) + ring::bit(right, x))];
      }
      acc += dist[s] * (turn / n);
    }
    partial[c] = acc;
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

double pair_b_turn_profit(const GameParams& params, const PairMarginal& pair) {
  double total = 0.0;
  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) {
      total += pair(k, l) * (2.0 * params.p[static_cast<std::size_t>(2 * k + l)] - 1.0);
    }
  }
  return total;
}

namespace {

MeanProfit profit_under(double b_share, const GameParams& params, StationaryResult solved) {
  MeanProfit out;
  out.mu = b_share * expected_b_turn_profit(params, solved.pi);
  out.pair = neighbor_pair_marginal(solved.pi);
  out.mu_pair = b_share * pair_b_turn_profit(params, out.pair);
  out.formula_delta = std::abs(out.mu - out.mu_pair);
  out.solver_residual = solved.residual;
  out.iterations = solved.iterations;
  return out;
}

}  // namespace

MeanProfit mean_profit_random(int n, double gamma, const GameParams& params,
                              const SolverOptions& options) {
  require_gamma(gamma);
  const auto op = ChainOperator::mixture(n, gamma, params);
  return profit_under(1.0 - gamma, params, stationary(op, options));
}

MeanProfit mean_profit_periodic(int n, int r, int s, const GameParams& params,
                                const SolverOptions& options) {
  require_period(r, s);
  const auto op = ChainOperator::cycle(n, r, s, params);
  const StationaryResult solved = stationary(op, options);

  const auto aprime = ChainOperator::game_Aprime(n);
  const auto game_b = ChainOperator::game_B(n, params);
  std::vector<double> law(solved.pi.weights().begin(), solved.pi.weights().end());
  std::vector<double> next(law.size());
  std::vector<double> scratch;
  for (int k = 0; k < r; ++k) {
    aprime.push(law, next, scratch);
    law.swap(next);
  }
  double full = 0.0;
  double paired = 0.0;
  for (int v = 0; v < s; ++v) {
    const auto current = DistributionAccess::make(n, law);
    full += expected_b_turn_profit(params, current);
    paired += pair_b_turn_profit(params, neighbor_pair_marginal(current));
    if (v + 1 < s) {
      game_b.push(law, next, scratch);
      law.swap(next);
    }
  }
  MeanProfit out;
  out.mu = full / (r + s);
  out.mu_pair = paired / (r + s);
  out.formula_delta = std::abs(out.mu - out.mu_pair);
  out.solver_residual = solved.residual;
  out.iterations = solved.iterations;
  out.pair = neighbor_pair_marginal(solved.pi);
  return out;
}

MeanProfit mean_profit(int n, const SchedulerSpec& sched, const GameParams& params,
                       const SolverOptions& options) {
  validate(sched);
  validate(params);
  if (const auto* mix = std::get_if<RandomMixture>(&sched)) {
    return mean_profit_random(n, mix->gamma, params, options);
  }
  if (const auto* per = std::get_if<PeriodicPattern>(&sched)) {
    return mean_profit_periodic(n, per->r, per->s, params, options);
  }
  if (std::get<SingleGame>(sched).game == Game::aprime) {
    // A' only moves wealth between players: every turn has expected profit 0.
    check_exact_size(n);
    return MeanProfit{};
  }
  return profit_under(1.0, params, stationary(ChainOperator::game_B(n, params), options));
}

std::vector<ConvergenceRow> convergence_table(const GameParams& params, const SchedulerSpec& sched,
                                              std::span<const int> n_values,
                                              const SolverOptions& options) {
  std::vector<ConvergenceRow> rows;
  rows.reserve(n_values.size());
  for (int n : n_values) {
    ConvergenceRow row{n, std::nullopt, std::nullopt, {}};
    try {
      row.value = mean_profit(n, sched, params, options);
      if (!rows.empty() && rows.back().value) row.delta = row.value->mu - rows.back().value->mu;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace parrondo
