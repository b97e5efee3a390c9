#include "ldev/series.hpp"

#include <cmath>

#include "ldev/errors.hpp"

namespace ldev {

SeriesSum series_sum(const std::function<double(int)>& term, int first_index, double tol,
                     int max_terms) {
  if (max_terms < 1) throw RegimeError("series_sum: max_terms < 1");
  SeriesSum out;
  double prev_abs = 0.0;
  int zero_run = 0;
  for (int j = 0; j < max_terms; ++j) {
    double t = term(first_index + j);
    out.value += t;
    ++out.terms_used;
    double abs_t = std::fabs(t);
    if (abs_t == 0.0) {
      if (++zero_run >= 3) {  // geometric decay: three exact zeros means done
        out.tail_bound = 0.0;
        return out;
      }
      prev_abs = 0.0;
      continue;
    }
    zero_run = 0;
    if (j > 0 && prev_abs > 0.0) {
      double r = abs_t / prev_abs;
      if (r < 1.0) {
        out.tail_bound = abs_t * r / (1.0 - r);
        double scale = std::fmax(std::fabs(out.value), 1e-300);
        if (out.tail_bound <= tol * scale) return out;
      }
    }
    prev_abs = abs_t;
  }
  // A non-decaying series never produced a geometric tail bound; the last
  // |term| is the honest lower bound on what is still outstanding.
  throw ConvergenceError("series_sum: no convergence within max_terms",
                         std::fmax(out.tail_bound, prev_abs), out.terms_used);
}

}  // namespace ldev
