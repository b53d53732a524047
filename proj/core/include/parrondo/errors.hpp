#pragma once

#include <stdexcept>
#include <string>

namespace parrondo {

// Bad caller input: out-of-range index, probability outside [0,1], N too large.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested state space exceeds the exact-engine cap.
class CapacityExceeded : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Power iteration hit its iteration budget before the residual reached tol.
class NotConverged : public std::runtime_error {
 public:
  NotConverged(long iterations, double residual)
      : std::runtime_error("stationary solver did not converge after " +
                           std::to_string(iterations) + " iterations (L1 residual " +
                           std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  long iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  long iterations_;
  double residual_;
};

// The chain is reducible, so a stationary law need not be unique.
class NotIrreducible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace parrondo
