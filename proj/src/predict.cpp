#include "ldev/predict.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ldev/cramer_series.hpp"
#include "ldev/errors.hpp"
#include "ldev/io_util.hpp"

namespace ldev {

double ZoneProxy::threshold(double bound, double n) const {
  if (!(bound > 0.0)) throw RegimeError("ZoneProxy: zone bound must be positive");
  const double divisor = divide_by_log_n ? std::max(std::log(n), 1.0) : 1.0;
  return c * bound / divisor;
}

namespace {

MainTermPrediction dependent_sum_prediction(int theorem, std::int64_t n_blocks,
                                            const MomentSet& ms, double x, const ZoneProxy& zp) {
  if (n_blocks < 1) throw RegimeError("predict_main_term: need n_blocks >= 1");
  const double n = static_cast<double>(n_blocks);
  MainTermPrediction out;
  out.theorem = theorem;
  out.mean = n * ms.nu1;
  if (!(out.mean > 0.0)) throw RegimeError("predict_main_term: mean must be positive");
  out.y = (x - out.mean) / out.mean;
  out.zone_bound = std::sqrt(out.mean);
  out.zone_threshold = zp.threshold(out.zone_bound, n);
  out.zone_ok = std::abs(x - out.mean) <= out.zone_threshold;
  const double g = gamma_of(ms);
  const double drift = 1.0 / ms.nu1 + n * out.y * out.y;
  if (theorem == 1) {
    out.log_main_term = lambda_series(n, ms.nu1, out.y).closed_form;
    out.error_scale = g * drift;
  } else {
    out.log_main_term = lambda_star_series(n, ms.nu1, out.y).closed_form;
    out.error_scale = g * std::sqrt(out.mean) * drift;
  }
  return out;
}

}  // namespace

MainTermPrediction predict_main_term_thm1(std::int64_t n_blocks, const MomentSet& ms, double x,
                                          const ZoneProxy& zp) {
  return dependent_sum_prediction(1, n_blocks, ms, x, zp);
}

MainTermPrediction predict_main_term_thm2(std::int64_t n_blocks, const MomentSet& ms, double x,
                                          const ZoneProxy& zp) {
  return dependent_sum_prediction(2, n_blocks, ms, x, zp);
}

MainTermPrediction predict_main_term_thm3(std::int64_t n, double p, double x,
                                          const ZoneProxy& zp) {
  if (n < 1 || !(p > 0.0 && p < 1.0)) {
    throw RegimeError("predict_main_term_thm3: need n >= 1 and p in (0,1)");
  }
  const double nd = static_cast<double>(n);
  MainTermPrediction out;
  out.theorem = 3;
  out.mean = nd * p * p;
  out.y = (x - out.mean) / out.mean;
  out.zone_bound = std::min(nd * p * p, std::pow(nd * p, 2.0 / 3.0));
  out.zone_threshold = zp.threshold(out.zone_bound, nd);
  out.zone_ok = std::abs(x - out.mean) <= out.zone_threshold;
  out.log_main_term = 0.0;
  out.error_scale = 0.0;
  return out;
}

MainTermPrediction predict_main_term_thm4(std::int64_t n, double p, double x,
                                          const ZoneProxy& zp) {
  if (n < 1 || !(p > 0.0 && p < 1.0)) {
    throw RegimeError("predict_main_term_thm4: need n >= 1 and p in (0,1)");
  }
  const double nd = static_cast<double>(n);
  MainTermPrediction out;
  out.theorem = 4;
  out.mean = nd * p * (1.0 - p);
  out.y = (x - out.mean) / out.mean;
  out.zone_bound = std::min(nd * p, std::pow(nd, 2.0 / 3.0));
  out.zone_threshold = zp.threshold(out.zone_bound, nd);
  out.zone_ok = std::abs(x - out.mean) <= out.zone_threshold;
  out.log_main_term = 0.0;
  out.error_scale = 0.0;
  return out;
}

void MainTermPrediction::write_json(std::ostream& os) const {
  os << "{\"theorem\":" << theorem << ",\"log_main_term\":" << fmt17(log_main_term)
     << ",\"mean\":" << fmt17(mean) << ",\"y\":" << fmt17(y)
     << ",\"zone_bound\":" << fmt17(zone_bound) << ",\"zone_threshold\":" << fmt17(zone_threshold)
     << ",\"zone_ok\":" << (zone_ok ? "true" : "false")
     << ",\"error_scale\":" << fmt17(error_scale) << "}";
}

}  // namespace ldev
