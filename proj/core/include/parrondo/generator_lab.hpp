#pragma once

// Cylinder functions on {0,1}^Z, the generators of games A', B and their
// gamma-mixture, the discrete generators of the N-player chains, and the
// embedding psi_N that compares the two.

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "parrondo/core_rules.hpp"

namespace parrondo {

inline constexpr int kMaxCylinderHalfWidth = 3;
// Output half-width of a generator applied to a half-width-3 function.
inline constexpr int kMaxGeneratorHalfWidth = kMaxCylinderHalfWidth + 1;
inline constexpr int kLemmaMaxPlayers = 20;
inline constexpr int kPeriodicLabMaxPlayers = 14;

// f(eta(-k), ..., eta(k)) as a dense table; bit j of the index is eta(-k + j).
class CylinderFunction {
 public:
  CylinderFunction(int k, std::vector<double> table);
  static CylinderFunction constant(int k, double value);
  // f(eta) = eta(site), |site| <= k.
  static CylinderFunction coordinate(int k, int site);

  int half_width() const { return k_; }
  int window() const { return 2 * k_ + 1; }
  std::span<const double> table() const { return table_; }
  double operator[](std::uint32_t w) const { return table_[w]; }
  // Evaluate on a window of any half-width >= k that is centered at 0.
  double eval_centered(std::uint32_t w, int width_k) const;
  // Same function seen as a cylinder of a larger half-width.
  CylinderFunction widened(int k) const;

  double sup_norm() const;
  CylinderFunction operator+(const CylinderFunction& other) const;
  CylinderFunction operator-(const CylinderFunction& other) const;
  CylinderFunction operator*(double c) const;

 private:
  int k_;
  std::vector<double> table_;
};

// A function on the 2^n configurations of an n-player ring (bit x = index x).
struct WindowFunctionOnRing {
  int n;
  std::vector<double> values;

  double sup_norm() const;
  double sup_distance(const WindowFunctionOnRing& other) const;
};

// (psi_N f)(eta): f on the centered labels, with every label outside the
// ring's l_N..r_N read as 1. Requires n >= 2k+1.
WindowFunctionOnRing embed_psi(const CylinderFunction& f, int n);

// sum_x c'(x,eta)[f(eta_x) - f(eta)] + (1/2) sum_x [f(swap_x eta) - f(eta)].
CylinderFunction omega_Aprime(const CylinderFunction& f);
// sum_x (1/4) sum over the four duels of x [f(duel) - f(eta)].
CylinderFunction omega_Aprime_duel_form(const CylinderFunction& f);
// sum_x c(x,eta)[f(eta_x) - f(eta)].
CylinderFunction omega_B(const GameParams& params, const CylinderFunction& f);
// gamma Omega_A' + (1 - gamma) Omega_B, swap part with coefficient gamma/2.
CylinderFunction omega_Cprime(double gamma, const GameParams& params, const CylinderFunction& f);
// Same flip terms with the swap part weighted by `swap_coefficient` instead
// of gamma/2; used to compare alternative groupings.
CylinderFunction omega_Cprime_grouped(double gamma, const GameParams& params,
                                      const CylinderFunction& f, double swap_coefficient);
// sum_x [f(swap_x eta) - f(eta)].
CylinderFunction swap_part(const CylinderFunction& f);

struct AprimeGame {};
struct BGame {};
struct MixtureGame {
  double gamma;
};
struct PeriodicGame {
  int r;
  int s;
};
using LabGame = std::variant<AprimeGame, BGame, MixtureGame, PeriodicGame>;

// N (P g - g) for one-step games, (N / (r+s)) (P_A'^r P_B^s g - g) for periodic.
WindowFunctionOnRing discrete_omega(int n, const LabGame& game, const GameParams& params,
                                    const WindowFunctionOnRing& g);

struct LemmaCheck {
  double residual;          // sup over the ring of |Omega^N psi_N f - psi_N Omega f|
  bool within_hypothesis;   // n >= 2k + 4
};
// Single-step games only (A', B, mixture).
LemmaCheck lemma_check(const CylinderFunction& f, int n, const LabGame& game, const GameParams& params);

// sup over the ring of |Omega^N_[r,s] psi_N f - psi_N((r/(r+s)) Omega_A' f + (s/(r+s)) Omega_B f)|.
// `margin` is the K of a support condition f(eta(-(K-2))..eta(K-2)); it
// defaults to k + 2 and must satisfy k <= margin - 2.
double periodic_residual(const CylinderFunction& f, int n, int r, int s, const GameParams& params,
                         std::optional<int> margin = std::nullopt);

}  // namespace parrondo
