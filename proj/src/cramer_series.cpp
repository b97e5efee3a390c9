#include "ldev/cramer_series.hpp"

#include <cmath>

#include "ldev/errors.hpp"
#include "ldev/series.hpp"

namespace ldev {

namespace {

double tilt_ratio(double nu1, double y) {
  if (!(nu1 > 0.0 && nu1 < 1.0)) throw RegimeError("correction series: nu1 must lie in (0,1)");
  const double s = nu1 * y / (1.0 - nu1);
  if (!(std::abs(s) < 1.0)) {
    throw RegimeError("correction series: |nu1*y/(1-nu1)| must stay below 1");
  }
  return s;
}

}  // namespace

SeriesValue lambda_series(double n, double nu1, double y) {
  const double s = tilt_ratio(nu1, y);
  const double scale = -n * (1.0 - nu1);
  SeriesValue out;
  if (s == 0.0) return out;
  const SeriesSum sum = series_sum(
      [s](int j) {
        const double jd = static_cast<double>(j);
        return std::pow(s, jd) / (jd * (jd - 1.0));
      },
      /*first_index=*/2, /*tol=*/1e-16, /*max_terms=*/100000);
  out.value = scale * sum.value;
  out.terms_used = sum.terms_used;
  out.tail_bound = std::abs(scale) * sum.tail_bound;
  // s + (1-s) ln(1-s) in long double: the leading s^2/2 term suffers heavy
  // cancellation between s and ln(1-s) when s is tiny.
  const long double sl = static_cast<long double>(s);
  out.closed_form =
      static_cast<double>(static_cast<long double>(scale) * (sl + (1.0L - sl) * std::log1p(-sl)));
  return out;
}

SeriesValue lambda_star_series(double n, double nu1, double y) {
  const double s = tilt_ratio(nu1, y);
  SeriesValue out;
  if (s == 0.0) return out;
  const SeriesSum sum = series_sum(
      [s](int j) {
        const double jd = static_cast<double>(j);
        return std::pow(s, jd) / jd;
      },
      /*first_index=*/2, /*tol=*/1e-16, /*max_terms=*/100000);
  out.value = n * sum.value;
  out.terms_used = sum.terms_used;
  out.tail_bound = n * sum.tail_bound;
  const long double sl = static_cast<long double>(s);
  out.closed_form = static_cast<double>(-static_cast<long double>(n) * (std::log1p(-sl) + sl));
  return out;
}

}  // namespace ldev
