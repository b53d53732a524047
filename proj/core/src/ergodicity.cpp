#include "parrondo/ergodicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "parrondo/errors.hpp"
#include "parrondo/parallel.hpp"
#include "parrondo/rng.hpp"

namespace parrondo {

namespace {

void require_closed_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw InvalidArgument("gamma must lie in [0,1], got " + std::to_string(gamma));
  }
}

using Window = std::uint32_t;

constexpr int wbit(Window w, int pos) { return static_cast<int>((w >> pos) & 1u); }

int local_pattern(Window w, int pos) { return (wbit(w, pos - 1) << 2) | (wbit(w, pos) << 1) | wbit(w, pos + 1); }

// Total variation as sup over events H of |mu(H) - nu(H)| for measures on a
// finite set of atoms.
double tv_by_events(std::span<const double> mu, std::span<const double> nu) {
  const std::size_t atoms = mu.size();
  double best = 0.0;
  for (std::size_t h = 0; h < (std::size_t{1} << atoms); ++h) {
    double a = 0.0;
    double b = 0.0;
    for (std::size_t i = 0; i < atoms; ++i) {
      if ((h >> i) & 1u) {
        a += mu[i];
        b += nu[i];
      }
    }
    best = std::max(best, std::abs(a - b));
  }
  return best;
}

// Transition families containing the center site x of a 7-site window
// (x at position 3): T = {x}, {x, x+1}, {x-1, x}.
constexpr int kWindow = 7;
constexpr int kCenter = 3;

// c_{x}(eta, .) on atoms zeta(x) in {0, 1}.
std::array<double, 2> flip_measure(const LocalRateTable& rates, Window w, int pos) {
  std::array<double, 2> m{};
  m[static_cast<std::size_t>(1 - wbit(w, pos))] = rates.flip_rates[static_cast<std::size_t>(local_pattern(w, pos))];
  return m;
}

// c_{a, a+1}(eta, .) on atoms 2*zeta(a) + zeta(a+1).
std::array<double, 4> swap_measure(const LocalRateTable& rates, Window w, int a) {
  std::array<double, 4> m{};
  const int left = wbit(w, a);
  const int right = wbit(w, a + 1);
  if (left != right) m[static_cast<std::size_t>(2 * right + left)] = rates.swap_rate;
  return m;
}

double lhs_closed(double gamma, const GameParams& params) {
  const auto& p = params.p;
  const double h = gamma / 2.0;
  const double g = 1.0 - gamma;
  return std::max(std::abs(h + g * (p[0] - p[1])), std::abs(h + g * (p[2] - p[3]))) +
         std::max(std::abs(h + g * (p[0] - p[2])), std::abs(h + g * (p[1] - p[3])));
}

}  // namespace

LocalRateTable LocalRateTable::make(double gamma, const GameParams& params) {
  require_closed_gamma(gamma);
  validate(params);
  LocalRateTable t{};
  for (int pat = 0; pat < 8; ++pat) {
    const int l = pat >> 2;
    const int self = (pat >> 1) & 1;
    const int r = pat & 1;
    t.flip_rates[static_cast<std::size_t>(pat)] =
        gamma * rate_Aprime_local(l, self, r) + (1.0 - gamma) * rate_B_local(params, l, self, r);
  }
  t.swap_rate = gamma / 2.0;
  return t;
}

double M_closed(double gamma, const GameParams& params) {
  require_closed_gamma(gamma);
  validate(params);
  return lhs_closed(gamma, params) + gamma;
}

double epsilon_value(double gamma) {
  require_closed_gamma(gamma);
  return 1.0 + gamma;
}

double M_bruteforce(double gamma, const GameParams& params) {
  const LocalRateTable rates = LocalRateTable::make(gamma, params);
  const int x = kCenter;
  double total = 0.0;
  for (int u = 0; u < kWindow; ++u) {
    if (u == x) continue;
    double flip_sup = 0.0;
    double right_swap_sup = 0.0;
    double left_swap_sup = 0.0;
    for (Window w = 0; w < (Window{1} << kWindow); ++w) {
      const Window wu = w ^ (Window{1} << u);
      flip_sup = std::max(flip_sup, tv_by_events(flip_measure(rates, w, x), flip_measure(rates, wu, x)));
      right_swap_sup =
          std::max(right_swap_sup, tv_by_events(swap_measure(rates, w, x), swap_measure(rates, wu, x)));
      left_swap_sup =
          std::max(left_swap_sup, tv_by_events(swap_measure(rates, w, x - 1), swap_measure(rates, wu, x - 1)));
    }
    total += flip_sup + right_swap_sup + left_swap_sup;
  }
  return total;
}

double epsilon_bruteforce(double gamma, const GameParams& params) {
  require_closed_gamma(gamma);
  validate(params);
  const double swap = gamma / 2.0;
  double best = std::numeric_limits<double>::infinity();
  // Site u at position 1 of a 3-site window.
  const int u = 1;
  for (Window w = 0; w < 8; ++w) {
    const Window wu = w ^ (Window{1} << u);
    const int l = wbit(w, 0);
    const int self = wbit(w, 1);
    const int r = wbit(w, 2);
    const double aprime = rate_Aprime_local(l, self, r) + rate_Aprime_local(l, 1 - self, r);
    const double b = rate_B_local(params, l, self, r) + rate_B_local(params, l, 1 - self, r);
    const double flips = gamma * aprime + (1.0 - gamma) * b;
    // A swap of (u, u+1) or (u-1, u) moves the neighbor's value into u; it
    // changes u exactly when the pair disagrees, which holds for one of eta, eta_u.
    double swaps = 0.0;
    for (Window cfg : {w, wu}) {
      if (wbit(cfg, u) != wbit(cfg, u + 1)) swaps += swap;
    }
    double swaps_left = 0.0;
    for (Window cfg : {w, wu}) {
      if (wbit(cfg, u) != wbit(cfg, u - 1)) swaps_left += swap;
    }
    best = std::min(best, flips + (swaps + swaps_left));
  }
  return best;
}

ErgodicityReport is_ergodic_Cprime(double gamma, const GameParams& params, ErgodicityMethod method) {
  require_closed_gamma(gamma);
  validate(params);
  ErgodicityReport rep{};
  rep.method = method;
  rep.gamma_in_theorem_range = gamma > 0.0 && gamma < 1.0;
  if (method == ErgodicityMethod::closed_form) {
    rep.lhs = lhs_closed(gamma, params);
    rep.M = rep.lhs + gamma;
    rep.epsilon = epsilon_value(gamma);
  } else {
    rep.M = M_bruteforce(gamma, params);
    rep.epsilon = epsilon_bruteforce(gamma, params);
    rep.lhs = rep.M - gamma;
  }
  rep.ergodic = method == ErgodicityMethod::closed_form ? rep.lhs < 1.0 : rep.M < rep.epsilon;
  rep.margin = rep.epsilon - rep.M;
  return rep;
}

ErgodicityReport is_ergodic_B(const GameParams& params) {
  validate(params);
  // sup_x sum_{u != x} sup_eta |c(x,eta) - c(x,eta_u)| over a 5-site window
  // centered on x, and inf_eta [c(x,eta) + c(x,eta_x)].
  constexpr int width = 5;
  constexpr int x = 2;
  double lhs = 0.0;
  for (int u = 0; u < width; ++u) {
    if (u == x) continue;
    double sup = 0.0;
    for (Window w = 0; w < (Window{1} << width); ++w) {
      const Window wu = w ^ (Window{1} << u);
      const double a = rate_B_local(params, wbit(w, x - 1), wbit(w, x), wbit(w, x + 1));
      const double b = rate_B_local(params, wbit(wu, x - 1), wbit(wu, x), wbit(wu, x + 1));
      sup = std::max(sup, std::abs(a - b));
    }
    lhs += sup;
  }
  double rhs = std::numeric_limits<double>::infinity();
  for (Window w = 0; w < 8; ++w) {
    const int l = wbit(w, 0);
    const int self = wbit(w, 1);
    const int r = wbit(w, 2);
    rhs = std::min(rhs, rate_B_local(params, l, self, r) + rate_B_local(params, l, 1 - self, r));
  }
  ErgodicityReport rep{};
  rep.M = lhs;
  rep.epsilon = rhs;
  rep.lhs = lhs;
  rep.ergodic = lhs < rhs;
  rep.margin = rhs - lhs;
  rep.method = ErgodicityMethod::brute_force;
  rep.gamma_in_theorem_range = false;
  return rep;
}

VolumeEstimate volume_estimate(double gamma, VolumeConstraint constraint, std::uint64_t samples,
                               std::uint64_t seed) {
  require_closed_gamma(gamma);
  if (samples == 0) throw InvalidArgument("volume estimate needs at least one sample");
  const CounterStream stream(seed, 0x766f6c756d65ULL);
  constexpr std::size_t block = std::size_t{1} << 15;
  const std::size_t blocks = (samples + block - 1) / block;
  std::vector<std::uint64_t> hits(blocks, 0);
  parallel_chunks(samples, block, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    std::uint64_t count = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint64_t base = 4 * static_cast<std::uint64_t>(i);
      GameParams p;
      const double u0 = stream.uniform_at(base);
      const double u1 = stream.uniform_at(base + 1);
      const double u2 = stream.uniform_at(base + 2);
      if (constraint == VolumeConstraint::p1_eq_p2) {
        p.p = {u0, u1, u1, u2};
      } else {
        p.p = {u0, u1, u2, stream.uniform_at(base + 3)};
      }
      if (lhs_closed(gamma, p) < 1.0) ++count;
    }
    hits[c] = count;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  const double est = static_cast<double>(total) / static_cast<double>(samples);
  return VolumeEstimate{est, std::sqrt(est * (1.0 - est) / static_cast<double>(samples)), total, samples};
}

}  // namespace parrondo
