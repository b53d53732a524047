#include "parrondo/generator_lab.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parrondo/errors.hpp"
#include "parrondo/exact_engine.hpp"
#include "parrondo/parallel.hpp"

namespace parrondo {

namespace {

using Window = std::uint32_t;

constexpr Window window_mask(int width) { return (Window{1} << width) - 1; }

constexpr int wbit(Window w, int pos) { return static_cast<int>((w >> pos) & 1u); }

constexpr Window set_bit(Window w, int pos, int value) {
  return (w & ~(Window{1} << pos)) | (static_cast<Window>(value) << pos);
}

void require_half_width(int k) {
  if (k < 0 || k > kMaxGeneratorHalfWidth) {
    throw InvalidArgument("cylinder half-width must lie in 0.." + std::to_string(kMaxGeneratorHalfWidth) +
                          ", got " + std::to_string(k));
  }
}

void require_input_width(const CylinderFunction& f) {
  if (f.half_width() > kMaxCylinderHalfWidth) {
    throw InvalidArgument("generators accept half-width <= " + std::to_string(kMaxCylinderHalfWidth));
  }
}

void require_same_width(const CylinderFunction& a, const CylinderFunction& b) {
  if (a.half_width() != b.half_width()) throw InvalidArgument("cylinder half-widths differ");
}

// Builds a half-width k+1 table from term(w, base, pos_of) where pos_of(x)
// maps a label to its bit.
template <class Term>
CylinderFunction tabulate(const CylinderFunction& f, Term term) {
  require_input_width(f);
  const int kk = f.half_width() + 1;
  const int width = 2 * kk + 1;
  std::vector<double> out(std::size_t{1} << width);
  for (Window w = 0; w < out.size(); ++w) out[w] = term(w, f.eval_centered(w, kk), kk);
  return CylinderFunction(kk, std::move(out));
}

double flip_sum_aprime(const CylinderFunction& f, Window w, double base, int kk) {
  const int k = f.half_width();
  double acc = 0.0;
  for (int x = -k; x <= k; ++x) {
    const int pos = x + kk;
    const double c = rate_Aprime_local(wbit(w, pos - 1), wbit(w, pos), wbit(w, pos + 1));
    if (c != 0.0) acc += c * (f.eval_centered(w ^ (Window{1} << pos), kk) - base);
  }
  return acc;
}

double flip_sum_b(const GameParams& params, const CylinderFunction& f, Window w, double base, int kk) {
  const int k = f.half_width();
  double acc = 0.0;
  for (int x = -k; x <= k; ++x) {
    const int pos = x + kk;
    const double c = rate_B_local(params, wbit(w, pos - 1), wbit(w, pos), wbit(w, pos + 1));
    if (c != 0.0) acc += c * (f.eval_centered(w ^ (Window{1} << pos), kk) - base);
  }
  return acc;
}

double swap_sum(const CylinderFunction& f, Window w, double base, int kk) {
  const int k = f.half_width();
  double acc = 0.0;
  // Pairs (x, x+1) with x in [-k-1, k] touch the support of f.
  for (int x = -k - 1; x <= k; ++x) {
    const int pos = x + kk;
    const int a = wbit(w, pos);
    const int b = wbit(w, pos + 1);
    if (a == b) continue;
    const Window swapped = set_bit(set_bit(w, pos, b), pos + 1, a);
    acc += f.eval_centered(swapped, kk) - base;
  }
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------
// CylinderFunction

CylinderFunction::CylinderFunction(int k, std::vector<double> table) : k_(k), table_(std::move(table)) {
  require_half_width(k);
  if (table_.size() != (std::size_t{1} << window())) {
    throw InvalidArgument("half-width " + std::to_string(k) + " needs a table of 2^" +
                          std::to_string(window()) + " values");
  }
  for (double v : table_) {
    if (!std::isfinite(v)) throw InvalidArgument("cylinder function values must be finite");
  }
}

CylinderFunction CylinderFunction::constant(int k, double value) {
  require_half_width(k);
  return CylinderFunction(k, std::vector<double>(std::size_t{1} << (2 * k + 1), value));
}

CylinderFunction CylinderFunction::coordinate(int k, int site) {
  require_half_width(k);
  if (site < -k || site > k) throw InvalidArgument("coordinate outside the window");
  std::vector<double> table(std::size_t{1} << (2 * k + 1));
  for (Window w = 0; w < table.size(); ++w) table[w] = wbit(w, site + k);
  return CylinderFunction(k, std::move(table));
}

double CylinderFunction::eval_centered(std::uint32_t w, int width_k) const {
  return table_[(w >> (width_k - k_)) & window_mask(window())];
}

CylinderFunction CylinderFunction::widened(int k) const {
  if (k < k_) throw InvalidArgument("cannot narrow a cylinder function");
  require_half_width(k);
  std::vector<double> table(std::size_t{1} << (2 * k + 1));
  for (Window w = 0; w < table.size(); ++w) table[w] = eval_centered(w, k);
  return CylinderFunction(k, std::move(table));
}

double CylinderFunction::sup_norm() const {
  double m = 0.0;
  for (double v : table_) m = std::max(m, std::abs(v));
  return m;
}

CylinderFunction CylinderFunction::operator+(const CylinderFunction& other) const {
  require_same_width(*this, other);
  std::vector<double> out(table_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = table_[i] + other.table_[i];
  return CylinderFunction(k_, std::move(out));
}

CylinderFunction CylinderFunction::operator-(const CylinderFunction& other) const {
  require_same_width(*this, other);
  std::vector<double> out(table_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = table_[i] - other.table_[i];
  return CylinderFunction(k_, std::move(out));
}

CylinderFunction CylinderFunction::operator*(double c) const {
  std::vector<double> out(table_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = table_[i] * c;
  return CylinderFunction(k_, std::move(out));
}

// ---------------------------------------------------------------------------
// WindowFunctionOnRing

double WindowFunctionOnRing::sup_norm() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double WindowFunctionOnRing::sup_distance(const WindowFunctionOnRing& other) const {
  if (other.n != n || other.values.size() != values.size()) {
    throw InvalidArgument("ring functions of different sizes");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) m = std::max(m, std::abs(values[i] - other.values[i]));
  return m;
}

WindowFunctionOnRing embed_psi(const CylinderFunction& f, int n) {
  const int k = f.half_width();
  if (n < std::max(kMinPlayers, 2 * k + 1)) {
    throw InvalidArgument("ring of " + std::to_string(n) + " players is too small for half-width " +
                          std::to_string(k));
  }
  if (n > kLemmaMaxPlayers) {
    throw CapacityExceeded("ring functions are capped at N = " + std::to_string(kLemmaMaxPlayers));
  }
  const LabelRange range = label_range(n);
  std::vector<int> index(static_cast<std::size_t>(2 * k + 1), -1);
  for (int j = 0; j <= 2 * k; ++j) {
    const int label = j - k;
    if (label >= range.left && label <= range.right) index[static_cast<std::size_t>(j)] = index_of(n, label);
  }
  WindowFunctionOnRing out{n, std::vector<double>(std::size_t{1} << n)};
  for (std::size_t s = 0; s < out.values.size(); ++s) {
    Window w = 0;
    for (int j = 0; j <= 2 * k; ++j) {
      const int i = index[static_cast<std::size_t>(j)];
      const int value = i < 0 ? 1 : static_cast<int>((s >> i) & 1u);
      w |= static_cast<Window>(value) << j;
    }
    out.values[s] = f[w];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators on {0,1}^Z

CylinderFunction omega_Aprime(const CylinderFunction& f) {
  return tabulate(f, [&](Window w, double base, int kk) {
    return flip_sum_aprime(f, w, base, kk) + 0.5 * swap_sum(f, w, base, kk);
  });
}

CylinderFunction omega_Aprime_duel_form(const CylinderFunction& f) {
  const int width = 2 * (f.half_width() + 1) + 1;
  return tabulate(f, [&](Window w, double base, int kk) {
    double acc = 0.0;
    for (int pos = 0; pos < width; ++pos) {
      for (int side : {-1, 1}) {
        const int other = pos + side;
        for (int x_wins : {0, 1}) {
          // Sites beyond the window do not affect f.
          Window next = set_bit(w, pos, x_wins);
          if (other >= 0 && other < width) next = set_bit(next, other, 1 - x_wins);
          acc += 0.25 * (f.eval_centered(next, kk) - base);
        }
      }
    }
    return acc;
  });
}

CylinderFunction omega_B(const GameParams& params, const CylinderFunction& f) {
  validate(params);
  return tabulate(f, [&](Window w, double base, int kk) { return flip_sum_b(params, f, w, base, kk); });
}

CylinderFunction omega_Cprime(double gamma, const GameParams& params, const CylinderFunction& f) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must lie in (0,1)");
  return omega_Aprime(f) * gamma + omega_B(params, f) * (1.0 - gamma);
}

CylinderFunction omega_Cprime_grouped(double gamma, const GameParams& params,
                                      const CylinderFunction& f, double swap_coefficient) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must lie in (0,1)");
  validate(params);
  return tabulate(f, [&](Window w, double base, int kk) {
    const int k = f.half_width();
    double acc = 0.0;
    for (int x = -k; x <= k; ++x) {
      const int pos = x + kk;
      const int l = wbit(w, pos - 1);
      const int self = wbit(w, pos);
      const int r = wbit(w, pos + 1);
      const double rate = gamma * rate_Aprime_local(l, self, r) + (1.0 - gamma) * rate_B_local(params, l, self, r);
      acc += rate * (f.eval_centered(w ^ (Window{1} << pos), kk) - base);
    }
    return acc + swap_coefficient * swap_sum(f, w, base, kk);
  });
}

CylinderFunction swap_part(const CylinderFunction& f) {
  return tabulate(f, [&](Window w, double base, int kk) { return swap_sum(f, w, base, kk); });
}

// ---------------------------------------------------------------------------
// Discrete generators

WindowFunctionOnRing discrete_omega(int n, const LabGame& game, const GameParams& params,
                                    const WindowFunctionOnRing& g) {
  if (g.n != n || g.values.size() != (std::size_t{1} << std::clamp(n, 0, 30))) {
    throw InvalidArgument("ring function does not match N = " + std::to_string(n));
  }
  const bool periodic = std::holds_alternative<PeriodicGame>(game);
  const int cap = periodic ? kPeriodicLabMaxPlayers : kLemmaMaxPlayers;
  if (n > cap) {
    throw CapacityExceeded("discrete generator is capped at N = " + std::to_string(cap) +
                           (periodic ? " for periodic games" : ""));
  }
  double scale = n;
  const ChainOperator op = std::visit(
      [&](const auto& gm) -> ChainOperator {
        using T = std::decay_t<decltype(gm)>;
        if constexpr (std::is_same_v<T, AprimeGame>) {
          return ChainOperator::game_Aprime(n);
        } else if constexpr (std::is_same_v<T, BGame>) {
          return ChainOperator::game_B(n, params);
        } else if constexpr (std::is_same_v<T, MixtureGame>) {
          return ChainOperator::mixture(n, gm.gamma, params);
        } else {
          scale = static_cast<double>(n) / (gm.r + gm.s);
          return ChainOperator::cycle(n, gm.r, gm.s, params);
        }
      },
      game);
  WindowFunctionOnRing out{n, std::vector<double>(g.values.size())};
  std::vector<double> scratch;
  op.pull(g.values, out.values, scratch);
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = scale * (out.values[i] - g.values[i]);
  return out;
}

LemmaCheck lemma_check(const CylinderFunction& f, int n, const LabGame& game, const GameParams& params) {
  const int k = f.half_width();
  if (std::holds_alternative<PeriodicGame>(game)) {
    throw InvalidArgument("lemma_check covers single-step games; use periodic_residual");
  }
  if (n < 2 * k + 3) {
    throw InvalidArgument("lemma_check needs N >= 2k+3 so that the generator window fits the ring");
  }
  const CylinderFunction limit = std::visit(
      [&](const auto& gm) -> CylinderFunction {
        using T = std::decay_t<decltype(gm)>;
        if constexpr (std::is_same_v<T, AprimeGame>) {
          return omega_Aprime(f);
        } else if constexpr (std::is_same_v<T, BGame>) {
          return omega_B(params, f);
        } else if constexpr (std::is_same_v<T, MixtureGame>) {
          return omega_Cprime(gm.gamma, params, f);
        } else {
          throw InvalidArgument("unreachable");
        }
      },
      game);
  const auto lhs = discrete_omega(n, game, params, embed_psi(f, n));
  const auto rhs = embed_psi(limit, n);
  return LemmaCheck{lhs.sup_distance(rhs), n >= 2 * k + 4};
}

double periodic_residual(const CylinderFunction& f, int n, int r, int s, const GameParams& params,
                         std::optional<int> margin) {
  const int k = f.half_width();
  const int big_k = margin.value_or(k + 2);
  if (k > big_k - 2) {
    throw InvalidArgument("f must depend only on eta(-(K-2))..eta(K-2); half-width " +
                          std::to_string(k) + " exceeds K-2 = " + std::to_string(big_k - 2));
  }
  if (r < 1 || s < 1) throw InvalidArgument("periodic pattern needs r, s >= 1");
  if (n < 2 * k + 3) throw InvalidArgument("ring too small for the generator window");
  const double total = r + s;
  const CylinderFunction limit = omega_Aprime(f) * (r / total) + omega_B(params, f) * (s / total);
  const auto lhs = discrete_omega(n, PeriodicGame{r, s}, params, embed_psi(f, n));
  return lhs.sup_distance(embed_psi(limit, n));
}

}  // namespace parrondo
