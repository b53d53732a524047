#pragma once

// Hand-rolled generators for property tests: every draw is a pure function of
// (seed, counter), so a failing case is reproduced by its seed alone.

#include <cstdint>
#include <vector>

#include "parrondo/core_rules.hpp"
#include "parrondo/ergodicity.hpp"
#include "parrondo/generator_lab.hpp"
#include "parrondo/rng.hpp"

namespace ptest {

class Gen {
 public:
  explicit Gen(std::uint64_t seed, std::uint64_t stream = 0x7465737473ULL) : s_(seed, stream) {}

  double uniform() { return s_.uniform(); }
  double in(double lo, double hi) { return lo + (hi - lo) * s_.uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(s_.below(static_cast<std::uint64_t>(hi - lo + 1))); }
  std::uint64_t bits(int n) { return n >= 64 ? s_() : s_() & ((std::uint64_t{1} << n) - 1); }

  // p_m uniform on (0.02, 0.98): interior, so every chain is irreducible.
  parrondo::GameParams interior_params() {
    return parrondo::GameParams{{in(0.02, 0.98), in(0.02, 0.98), in(0.02, 0.98), in(0.02, 0.98)}};
  }
  parrondo::GameParams any_params() { return parrondo::GameParams{{uniform(), uniform(), uniform(), uniform()}}; }

  // Interior point whose mixture satisfies the gamma condition.
  parrondo::GameParams ergodic_params(double gamma) {
    for (;;) {
      auto p = interior_params();
      if (parrondo::is_ergodic_Cprime(gamma, p).ergodic) return p;
    }
  }

  parrondo::Configuration config(int n) {
    parrondo::Configuration c(n);
    for (int x = 0; x < n; ++x) c.set(x, static_cast<int>(s_() & 1));
    return c;
  }

  parrondo::CylinderFunction cylinder(int k) {
    std::vector<double> t(std::size_t{1} << (2 * k + 1));
    for (auto& v : t) v = in(-1.0, 1.0);
    return parrondo::CylinderFunction(k, std::move(t));
  }

 private:
  parrondo::CounterStream s_;
};

}  // namespace ptest
