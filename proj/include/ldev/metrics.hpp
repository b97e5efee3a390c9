#pragma once

#include <cstdint>
#include <vector>

#include "ldev/lattice_pmf.hpp"

namespace ldev {

// Finite signed measure on a contiguous integer range.
struct SignedLatticeMeasure {
  std::int64_t offset = 0;
  std::vector<double> masses;

  static SignedLatticeMeasure difference(const LatticePMF& a, const LatticePMF& b);

  std::int64_t min_support() const { return offset; }
  std::int64_t max_support() const { return offset + static_cast<std::int64_t>(masses.size()) - 1; }
};

// sum |M{k}|
double tv_norm(const SignedLatticeMeasure& m);

// max_x |sum_{k <= x} M{k}|
double kolmogorov_norm(const SignedLatticeMeasure& m);

// Right side of the smoothing inequality bounding the total variation norm
// through the CF:
//   sqrt(1 + pi b) * sqrt( (1/2pi) Int |Mhat(it)|^2 + (1/b^2)|d/dt e^{-ita} Mhat(it)|^2 dt ).
// Both integrands are trigonometric polynomials, so the periodic rule with
// enough nodes is exact.  b > 0; a recenters the derivative term.
double inversion_bound_rhs(const SignedLatticeMeasure& m, double a, double b, int nodes = 0);

// Stirling-type bracket x^x e^{-x} sqrt(2 pi (x + 0.16)) < Gamma(x+1) <
// x^x e^{-x} sqrt(2 pi (x + 0.18)) for x >= 1; margins in log scale.
struct GammaBoundsResult {
  bool lower_ok = false;
  bool upper_ok = false;
  double lower_margin = 0.0;  // log Gamma(x+1) - log lower
  double upper_margin = 0.0;  // log upper - log Gamma(x+1)
};

GammaBoundsResult gamma_bounds_check(double x);

}  // namespace ldev
