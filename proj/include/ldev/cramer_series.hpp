#pragma once

namespace ldev {

// The two power series in y correcting the exponential main terms, with
// s = t = nu1*y/(1-nu1):
//   Lambda(y)  = -n(1-nu1) * sum_{j>=2} s^j / (j(j-1))
//              = -n(1-nu1) * (s + (1-s) ln(1-s))
//   Lambda*(y) = n * sum_{j>=2} t^j / j = -n (ln(1-t) + t)
// Both require |s| < 1.  value is the term-by-term sum; closed_form is the
// closed expression evaluated in extended precision (the two must agree to
// ~1e-13 relative; that agreement is asserted by tests, not at runtime).
struct SeriesValue {
  double value = 0.0;
  double closed_form = 0.0;
  int terms_used = 0;
  double tail_bound = 0.0;
};

SeriesValue lambda_series(double n, double nu1, double y);
SeriesValue lambda_star_series(double n, double nu1, double y);

}  // namespace ldev
