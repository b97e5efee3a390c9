#pragma once

#include <stdexcept>
#include <string>

namespace ldev {

// Base for all errors thrown by the library. The CLI maps subclasses to
// distinct exit codes (see tools/ldev.cpp).
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter outside the domain where a family/theorem/regime is defined
// (negative dispersion, saddle out of support, cap < 1, ...).  Exit code 2.
struct RegimeError : Error {
  using Error::Error;
};

// Numerical instability abort (factorization factor too close to zero,
// non-convergent series or fixed point, quadrature overflow).  Exit code 3.
struct InstabilityError : Error {
  using Error::Error;
};

// Estimated allocation exceeds the configured memory budget.  Exit code 2.
struct MemoryLimitError : Error {
  using Error::Error;
};

// Series summation failed to reach the requested tolerance; carries the last
// tail estimate so callers can report how far away convergence was.
struct ConvergenceError : InstabilityError {
  ConvergenceError(const std::string& msg, double last_tail, int terms)
      : InstabilityError(msg), last_tail_estimate(last_tail), terms_used(terms) {}
  double last_tail_estimate;
  int terms_used;
};

}  // namespace ldev
