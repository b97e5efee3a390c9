#pragma once

#include <cstdint>

#include "ldev/lattice_pmf.hpp"

namespace ldev {

// Exponential tilt: masses m_x -> e^{z x} m_x / N(z), N(z) = sum e^{z x} m_x.
// Requires an untruncated PMF (the lumped cell has no definite location to
// tilt).  Computed wholly in log domain.
struct TiltedPMF {
  LatticePMF pmf;
  double log_normalizer = 0.0;
};

TiltedPMF tilt_pmf(const LatticePMF& pmf, double z);

// Conjugate-inversion identity check: recovers e^{z m} G{m} as the
// normalized integral of Ghat(z+it) e^{-itm} and returns the relative
// residual against the direct value.  Node count is chosen to make the
// quadrature exact for the PMF's trigonometric degree.
double inversion_check(const LatticePMF& pmf, double z, std::int64_t m);

}  // namespace ldev
