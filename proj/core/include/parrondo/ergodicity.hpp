#pragma once

// Sufficient conditions for ergodicity of the infinite-lattice systems with
// generators Omega_B and Omega_C' = gamma Omega_A' + (1 - gamma) Omega_B, via
// the basic inequality M < epsilon, plus Monte Carlo volumes of the parameter
// region where the condition holds.

#include <array>
#include <cstdint>

#include "parrondo/core_rules.hpp"

namespace parrondo {

// Rates of the two transition families of Omega_C': single-site flips with
// rate gamma c' + (1 - gamma) c by local pattern 4*left + 2*self + right, and
// adjacent swaps with rate gamma/2 when the pair disagrees.
struct LocalRateTable {
  std::array<double, 8> flip_rates;
  double swap_rate;

  static LocalRateTable make(double gamma, const GameParams& params);
};

enum class ErgodicityMethod { closed_form, brute_force };

struct ErgodicityReport {
  double M;
  double epsilon;
  double lhs;      // left side of the condition, M - gamma; the condition is lhs < 1
  bool ergodic;    // condition holds; false means "not guaranteed", never "not ergodic"
  double margin;   // epsilon - M
  ErgodicityMethod method;
  bool gamma_in_theorem_range;  // 0 < gamma < 1
};

// Defined for 0 <= gamma <= 1; gamma = 0 is the pure-B value.
double M_closed(double gamma, const GameParams& params);
double epsilon_value(double gamma);
// sup over x of the summed total-variation sensitivities of every transition
// family containing x, by enumeration of local patterns.
double M_bruteforce(double gamma, const GameParams& params);
// inf over sites and configurations of the flip/swap rates that change site u.
double epsilon_bruteforce(double gamma, const GameParams& params);

ErgodicityReport is_ergodic_Cprime(double gamma, const GameParams& params,
                                   ErgodicityMethod method = ErgodicityMethod::closed_form);
// Spin-system condition for Omega_B, evaluated by enumeration.
ErgodicityReport is_ergodic_B(const GameParams& params);

enum class VolumeConstraint { none, p1_eq_p2 };

struct VolumeEstimate {
  double estimate;
  double std_error;  // sqrt(estimate (1 - estimate) / samples)
  std::uint64_t hits;
  std::uint64_t samples;
};

// Fraction of uniform parameter draws satisfying the gamma condition. Draw i
// uses counters 4i..4i+3 of one seeded stream, so a longer run extends a
// shorter one sample for sample. Independent of the thread count.
VolumeEstimate volume_estimate(double gamma, VolumeConstraint constraint, std::uint64_t samples,
                               std::uint64_t seed);

}  // namespace parrondo
