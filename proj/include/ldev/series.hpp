#pragma once

#include <functional>

namespace ldev {

struct SeriesSum {
  double value = 0.0;
  int terms_used = 0;
  double tail_bound = 0.0;  // geometric-ratio estimate of the dropped tail
};

// Sums term(j) for j = first_index, first_index+1, ... assuming eventually
// geometric decay.  Stops when the estimated remaining tail
// |t_j| * r / (1 - r), with r = |t_j|/|t_{j-1}| < 1, drops below
// tol * max(|partial sum|, tiny); throws ConvergenceError (carrying the last
// tail estimate) if max_terms is exhausted first.  A run of consecutive
// exactly-zero terms counts as converged (handles y = 0 cleanly).
SeriesSum series_sum(const std::function<double(int)>& term, int first_index,
                     double tol, int max_terms);

}  // namespace ldev
