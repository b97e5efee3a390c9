#include "ldev/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ldev/errors.hpp"
#include "ldev/quadrature.hpp"

namespace ldev {

SignedLatticeMeasure SignedLatticeMeasure::difference(const LatticePMF& a, const LatticePMF& b) {
  if (a.truncated() || b.truncated()) {
    throw RegimeError("SignedLatticeMeasure: difference needs untruncated PMFs");
  }
  SignedLatticeMeasure out;
  out.offset = std::min(a.min_support(), b.min_support());
  const std::int64_t hi = std::max(a.max_support(), b.max_support());
  out.masses.assign(static_cast<std::size_t>(hi - out.offset + 1), 0.0);
  for (std::int64_t x = out.offset; x <= hi; ++x) {
    double v = 0.0;
    if (x >= a.min_support() && x <= a.max_support()) v += a.mass(x).linear();
    if (x >= b.min_support() && x <= b.max_support()) v -= b.mass(x).linear();
    out.masses[static_cast<std::size_t>(x - out.offset)] = v;
  }
  return out;
}

double tv_norm(const SignedLatticeMeasure& m) {
  double acc = 0.0;
  for (double v : m.masses) acc += std::abs(v);
  return acc;
}

double kolmogorov_norm(const SignedLatticeMeasure& m) {
  double run = 0.0;
  double worst = 0.0;
  for (double v : m.masses) {
    run += v;
    worst = std::max(worst, std::abs(run));
  }
  return worst;
}

double inversion_bound_rhs(const SignedLatticeMeasure& m, double a, double b, int nodes) {
  if (!(b > 0.0)) throw RegimeError("inversion_bound_rhs: b must be positive");
  if (m.masses.empty()) throw RegimeError("inversion_bound_rhs: empty measure");
  // Mhat(it) = sum_k e^{itk} M{k};  (e^{-ita} Mhat(it))' has modulus
  // |sum_k (k-a) e^{itk} M{k}|.  Both squared moduli are trigonometric
  // polynomials of degree <= 2*(support span), so the rule below is exact.
  const std::int64_t span = m.max_support() - m.min_support();
  if (nodes <= 0) nodes = static_cast<int>(2 * span + 5);
  const Cplx integral = periodic_quadrature(
      [&](double t) {
        Cplx mhat{0.0, 0.0};
        Cplx dhat{0.0, 0.0};
        for (std::size_t i = 0; i < m.masses.size(); ++i) {
          const double k = static_cast<double>(m.offset + static_cast<std::int64_t>(i));
          const Cplx e = expi(t * k) * m.masses[i];
          mhat += e;
          dhat += (k - a) * e;
        }
        return Cplx(std::norm(mhat) + std::norm(dhat) / (b * b), 0.0);
      },
      nodes);
  return std::sqrt(1.0 + b * M_PI) * std::sqrt(integral.real());
}

GammaBoundsResult gamma_bounds_check(double x) {
  if (!(x >= 1.0)) throw RegimeError("gamma_bounds_check: defined for x >= 1");
  const double lg = std::lgamma(x + 1.0);
  const double core = x * std::log(x) - x;
  const double lower = core + 0.5 * std::log(2.0 * M_PI * (x + 0.16));
  const double upper = core + 0.5 * std::log(2.0 * M_PI * (x + 0.18));
  GammaBoundsResult out;
  out.lower_margin = lg - lower;
  out.upper_margin = upper - lg;
  out.lower_ok = out.lower_margin > 0.0;
  out.upper_ok = out.upper_margin > 0.0;
  return out;
}

}  // namespace ldev
