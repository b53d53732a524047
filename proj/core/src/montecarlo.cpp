#include "parrondo/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parrondo/ergodicity.hpp"
#include "parrondo/errors.hpp"
#include "parrondo/parallel.hpp"
#include "parrondo/rng.hpp"

namespace parrondo {

namespace {

enum StreamId : std::uint64_t { kSiteStream = 1, kGameStream = 2, kNeighborStream = 3, kCoinStream = 4, kInitStream = 5 };

class BitRing {
 public:
  BitRing(std::size_t n, const CounterStream& init) : n_(n), words_((n + 63) / 64, 0) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] = init.at(w);
    if (n % 64) words_.back() &= (std::uint64_t{1} << (n % 64)) - 1;
  }

  int get(std::size_t i) const { return static_cast<int>((words_[i >> 6] >> (i & 63)) & 1u); }
  void set(std::size_t i, int v) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    words_[i >> 6] = v ? (words_[i >> 6] | bit) : (words_[i >> 6] & ~bit);
  }
  std::size_t left(std::size_t i) const { return i == 0 ? n_ - 1 : i - 1; }
  std::size_t right(std::size_t i) const { return i + 1 == n_ ? 0 : i + 1; }
  // 2 * eta(i-1) + eta(i+1).
  int pair_at(std::size_t i) const { return 2 * get(left(i)) + get(right(i)); }

 private:
  std::size_t n_;
  std::vector<std::uint64_t> words_;
};

// Counts of (eta(x-1), eta(x+1)) over all centers x, kept current as sites change.
class SpatialPairs {
 public:
  explicit SpatialPairs(const BitRing& ring, std::size_t n) : ring_(ring) {
    for (std::size_t x = 0; x < n; ++x) ++counts_[static_cast<std::size_t>(ring.pair_at(x))];
  }
  // Call with the ring still holding the old value of site y, then after.
  void remove_around(std::size_t y) {
    --counts_[static_cast<std::size_t>(ring_.pair_at(ring_.left(y)))];
    --counts_[static_cast<std::size_t>(ring_.pair_at(ring_.right(y)))];
  }
  void add_around(std::size_t y) {
    ++counts_[static_cast<std::size_t>(ring_.pair_at(ring_.left(y)))];
    ++counts_[static_cast<std::size_t>(ring_.pair_at(ring_.right(y)))];
  }
  const std::array<std::uint64_t, 4>& counts() const { return counts_; }

 private:
  const BitRing& ring_;
  std::array<std::uint64_t, 4> counts_{};
};

struct BatchStats {
  std::vector<double> profit;
  std::vector<std::array<double, 4>> fixed;
  std::vector<std::array<double, 4>> spatial;
};

double half_width(std::span<const double> means) {
  const double k = static_cast<double>(means.size());
  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= k;
  double ss = 0.0;
  for (double m : means) ss += (m - mean) * (m - mean);
  return kBatchT * std::sqrt(ss / (k - 1.0) / k);
}

}  // namespace

std::uint64_t default_burnin(long long n) {
  const double nn = static_cast<double>(n);
  return static_cast<std::uint64_t>(std::ceil(10.0 * nn * std::log(2.0 + nn)));
}

void validate(const SimConfig& cfg) {
  if (cfg.n < kMinPlayers || cfg.n > kMaxSimPlayers) {
    throw InvalidArgument("simulation needs 3 <= n <= " + std::to_string(kMaxSimPlayers) + ", got " +
                          std::to_string(cfg.n));
  }
  validate(cfg.sched);
  validate(cfg.params);
  const std::uint64_t burnin = cfg.burnin.value_or(default_burnin(cfg.n));
  if (burnin >= cfg.turns || cfg.turns - burnin < static_cast<std::uint64_t>(kBatches)) {
    throw InvalidArgument("need at least " + std::to_string(kBatches) + " turns after a burn-in of " +
                          std::to_string(burnin) + " (turns = " + std::to_string(cfg.turns) + ")");
  }
}

SimResult simulate(const SimConfig& cfg) {
  validate(cfg);
  const auto n = static_cast<std::size_t>(cfg.n);
  const CounterStream site_stream(cfg.seed, kSiteStream);
  const CounterStream game_stream(cfg.seed, kGameStream);
  const CounterStream neighbor_stream(cfg.seed, kNeighborStream);
  const CounterStream coin_stream(cfg.seed, kCoinStream);

  // Schedule: A' when u < gamma (mixture), by phase (periodic), or fixed.
  double gamma = 0.0;
  int cycle_r = 0;
  int cycle_len = 0;
  bool always_aprime = false;
  bool always_b = false;
  if (const auto* mix = std::get_if<RandomMixture>(&cfg.sched)) {
    gamma = mix->gamma;
  } else if (const auto* per = std::get_if<PeriodicPattern>(&cfg.sched)) {
    cycle_r = per->r;
    cycle_len = per->r + per->s;
  } else {
    always_aprime = std::get<SingleGame>(cfg.sched).game == Game::aprime;
    always_b = !always_aprime;
  }

  std::uint64_t burnin = cfg.burnin.value_or(default_burnin(cfg.n));
  if (cycle_len > 0) {
    // Start measuring at the beginning of an A' block.
    const auto len = static_cast<std::uint64_t>(cycle_len);
    burnin = (burnin + len - 1) / len * len;
    if (burnin >= cfg.turns || cfg.turns - burnin < static_cast<std::uint64_t>(kBatches)) {
      throw InvalidArgument("burn-in rounded to whole periods leaves too few turns");
    }
  }
  const std::uint64_t measured = cfg.turns - burnin;

  BitRing ring(n, CounterStream(cfg.seed, kInitStream));
  SpatialPairs spatial(ring, n);
  std::vector<long long> wealth;
  if (cfg.audit) wealth.assign(n, 0);

  SimResult res;
  res.burnin_used = burnin;
  res.turns_used = measured;

  BatchStats batches;
  batches.profit.reserve(kBatches);
  long long batch_profit = 0;
  std::array<std::uint64_t, 4> batch_fixed{};
  std::array<std::uint64_t, 4> batch_spatial{};
  int batch = 0;
  std::uint64_t batch_start = 0;
  std::uint64_t batch_end = measured / kBatches;
  const std::size_t minus_one = n - 1;
  const std::size_t plus_one = 1;

  auto change = [&](std::size_t y, int v) {
    if (ring.get(y) == v) return;
    spatial.remove_around(y);
    ring.set(y, v);
    spatial.add_around(y);
  };

  for (std::uint64_t t = 0; t < cfg.turns; ++t) {
    const auto x = static_cast<std::size_t>(site_stream.below_at(t, n));
    bool play_aprime;
    if (always_aprime || always_b) {
      play_aprime = always_aprime;
    } else if (cycle_len > 0) {
      play_aprime = static_cast<int>(t % static_cast<std::uint64_t>(cycle_len)) < cycle_r;
    } else {
      play_aprime = game_stream.uniform_at(t) < gamma;
    }

    int profit = 0;
    if (play_aprime) {
      const std::size_t other = (neighbor_stream.at(t) & 1u) ? ring.right(x) : ring.left(x);
      const int x_wins = coin_stream.uniform_at(t) < 0.5 ? 1 : 0;
      change(x, x_wins);
      change(other, 1 - x_wins);
      if (cfg.audit) {
        const long long before = wealth[x] + wealth[other];
        wealth[x] += x_wins ? 1 : -1;
        wealth[other] += x_wins ? -1 : 1;
        ++res.aprime_turns;
        if (wealth[x] + wealth[other] != before) ++res.aprime_nonzero_turns;
      }
    } else {
      const int m = ring.pair_at(x);
      const int win = coin_stream.uniform_at(t) < cfg.params.p[static_cast<std::size_t>(m)] ? 1 : 0;
      change(x, win);
      profit = win ? 1 : -1;
      if (cfg.audit) {
        const long long before = wealth[x];
        wealth[x] += profit;
        ++res.b_turns;
        if (std::abs(wealth[x] - before) != 1) ++res.b_bad_turns;
      }
    }

    if (t < burnin) continue;
    const std::uint64_t j = t - burnin;
    batch_profit += profit;
    ++batch_fixed[static_cast<std::size_t>(2 * ring.get(minus_one) + ring.get(plus_one))];
    for (std::size_t k = 0; k < 4; ++k) batch_spatial[k] += spatial.counts()[k];

    if (j + 1 == batch_end) {
      const double len = static_cast<double>(batch_end - batch_start);
      batches.profit.push_back(static_cast<double>(batch_profit) / len);
      std::array<double, 4> f{};
      std::array<double, 4> s{};
      for (std::size_t k = 0; k < 4; ++k) {
        f[k] = static_cast<double>(batch_fixed[k]) / len;
        s[k] = static_cast<double>(batch_spatial[k]) / (len * static_cast<double>(n));
        res.pair_fixed.probs[k] += static_cast<double>(batch_fixed[k]);
        res.pair_spatial.probs[k] += static_cast<double>(batch_spatial[k]);
      }
      batches.fixed.push_back(f);
      batches.spatial.push_back(s);
      res.total_profit += batch_profit;
      batch_profit = 0;
      batch_fixed = {};
      batch_spatial = {};
      ++batch;
      batch_start = batch_end;
      batch_end = measured * static_cast<std::uint64_t>(batch + 1) / kBatches;
    }
  }

  const double total = static_cast<double>(measured);
  res.mu_hat = static_cast<double>(res.total_profit) / total;
  res.ci_halfwidth = half_width(batches.profit);
  for (std::size_t k = 0; k < 4; ++k) {
    res.pair_fixed.probs[k] /= total;
    res.pair_spatial.probs[k] /= total * static_cast<double>(n);
    std::vector<double> f(kBatches);
    std::vector<double> s(kBatches);
    for (int b = 0; b < kBatches; ++b) {
      f[static_cast<std::size_t>(b)] = batches.fixed[static_cast<std::size_t>(b)][k];
      s[static_cast<std::size_t>(b)] = batches.spatial[static_cast<std::size_t>(b)][k];
    }
    res.pair_fixed_ci[k] = half_width(f);
    res.pair_spatial_ci[k] = half_width(s);
  }
  if (cfg.audit) {
    for (long long w : wealth) res.wealth_sum += w;
  }
  return res;
}

SimResult simulate_periodic(const SimConfig& cfg) {
  if (!std::holds_alternative<PeriodicPattern>(cfg.sched)) {
    throw InvalidArgument("simulate_periodic needs a periodic (r, s) schedule");
  }
  return simulate(cfg);
}

std::vector<SimResult> simulate_replicas(const SimConfig& cfg, int replicas) {
  if (replicas < 1) throw InvalidArgument("need at least one replica");
  validate(cfg);
  std::vector<SimResult> out(static_cast<std::size_t>(replicas));
  parallel_chunks(out.size(), 1, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      SimConfig c = cfg;
      c.seed = derive_seed(cfg.seed, i);
      out[i] = simulate(c);
    }
  });
  return out;
}

std::vector<GameParams> ScanGrid::points() const {
  const std::vector<double>& axis2 = tie_p1_p2 ? std::vector<double>{0.0} : p2;
  std::vector<GameParams> out;
  for (double a : p0)
    for (double b : p1)
      for (double c : axis2)
        for (double d : p3) out.push_back(GameParams::make(a, b, tie_p1_p2 ? b : c, d));
  return out;
}

std::vector<ScanRecord> parrondo_scan(std::span<const GameParams> points, const ScanOptions& options) {
  validate(options.sched);
  constexpr double exact_tol = 1e-12;
  const double gamma = aprime_fraction(options.sched);
  std::vector<ScanRecord> out(points.size());
  auto run_point = [&](std::size_t i) {
    ScanRecord& rec = out[i];
    rec.params = points[i];
    try {
      validate(rec.params);
      const auto erg = is_ergodic_Cprime(gamma, rec.params);
      rec.ergodic = erg.ergodic;
      rec.ergodic_margin = 1.0 - erg.lhs;
      if (options.method == ScanMethod::exact) {
        const int n = static_cast<int>(std::min<long long>(options.n, kExactMaxPlayers + 1));
        rec.mu_B = mean_profit(n, SingleGame{Game::b}, rec.params, options.solver).mu;
        rec.mu_C = mean_profit(n, options.sched, rec.params, options.solver).mu;
        rec.effect = rec.mu_B <= exact_tol && rec.mu_C > exact_tol;
      } else {
        SimConfig cfg;
        cfg.n = options.n;
        cfg.params = rec.params;
        cfg.turns = options.turns;
        cfg.seed = derive_seed(options.seed, i);
        cfg.sched = SingleGame{Game::b};
        const SimResult b = simulate(cfg);
        cfg.sched = options.sched;
        const SimResult c = simulate(cfg);
        rec.mu_B = b.mu_hat;
        rec.ci_B = b.ci_halfwidth;
        rec.mu_C = c.mu_hat;
        rec.ci_C = c.ci_halfwidth;
        rec.effect = rec.mu_B <= rec.ci_B && rec.mu_C - rec.ci_C > 0.0;
      }
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  };
  // Exact solves parallelize internally; simulated points run side by side.
  if (options.method == ScanMethod::simulate) {
    parallel_chunks(points.size(), 1, [&](std::size_t, std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) run_point(i);
    });
  } else {
    for (std::size_t i = 0; i < points.size(); ++i) run_point(i);
  }
  return out;
}

}  // namespace parrondo
