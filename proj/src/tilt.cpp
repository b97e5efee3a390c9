#include "ldev/tilt.hpp"

#include <cmath>
#include <vector>

#include "ldev/errors.hpp"
#include "ldev/logreal.hpp"
#include "ldev/quadrature.hpp"

namespace ldev {

TiltedPMF tilt_pmf(const LatticePMF& pmf, double z) {
  if (pmf.truncated()) {
    throw RegimeError("tilt_pmf: refusing to tilt a truncated PMF");
  }
  if (!std::isfinite(z)) throw RegimeError("tilt_pmf: tilt parameter must be finite");
  const std::size_t n = pmf.size();
  std::vector<LogReal> tilted(n);
  std::vector<LogReal> terms;
  terms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t x = pmf.min_support() + static_cast<std::int64_t>(i);
    const LogReal w = pmf.masses()[i] * LogReal::from_log(z * static_cast<double>(x));
    tilted[i] = w;
    if (!w.is_zero()) terms.push_back(w);
  }
  const LogReal norm = log_sum_exp(terms);
  if (norm.is_zero()) throw InstabilityError("tilt_pmf: zero normalizer");
  for (auto& w : tilted) w /= norm;
  TiltedPMF out{LatticePMF(pmf.min_support(), std::move(tilted)), norm.log_value()};
  return out;
}

double inversion_check(const LatticePMF& pmf, double z, std::int64_t m) {
  if (pmf.truncated()) {
    throw RegimeError("inversion_check: requires an untruncated PMF");
  }
  if (m < pmf.min_support() || m > pmf.max_support()) {
    throw RegimeError("inversion_check: m outside the support window");
  }
  const LogReal direct_mass = pmf.mass(m);
  // e^{zm} G{m} = (1/2pi) Int_{-pi}^{pi} Ghat(z+it) e^{-itm} dt.  The
  // integrand is a trigonometric polynomial whose frequencies are x-m for x
  // in the support, so N nodes beyond twice the largest |x-m| integrate it
  // exactly up to roundoff.
  const std::int64_t reach =
      std::max(pmf.max_support() - m, m - pmf.min_support());
  const int nodes = static_cast<int>(2 * reach + 5);
  const double md = static_cast<double>(m);
  const Cplx recovered = periodic_quadrature(
      [&](double t) {
        return cf_eval(pmf, Cplx(z, t)) * expi(-t * md);
      },
      nodes);
  const double direct = direct_mass.is_zero()
                            ? 0.0
                            : std::exp(z * md + direct_mass.log_value());
  const double scale = std::max(std::abs(direct), 1e-300);
  return std::abs(recovered - direct) / scale;
}

}  // namespace ldev
