#pragma once

#include <cstdint>
#include <iosfwd>

#include "ldev/moments.hpp"

namespace ldev {

// The asymptotic statements hold in zones of the form |x - mean| = o(bound).
// Desk-scale runs need a concrete stand-in; the default proxy is
// |x - mean| <= c * bound / ln(n), with c and the ln(n) divisor exposed in
// the config and echoed in every report.
struct ZoneProxy {
  double c = 1.0;
  bool divide_by_log_n = true;

  double threshold(double bound, double n) const;
};

struct MainTermPrediction {
  int theorem = 0;
  double log_main_term = 0.0;   // Lambda, Lambda*, or 0
  double mean = 0.0;            // centering used by the zone
  double zone_bound = 0.0;      // the o(.) argument
  double zone_threshold = 0.0;  // proxy threshold actually applied
  bool zone_ok = false;
  double error_scale = 0.0;     // predicted error magnitude (Thm 1/2 only)
  double y = 0.0;

  void write_json(std::ostream& os) const;
};

// Thm 1: ratio of grouped-block sum to Poisson(n nu1) at x; main term
// e^{Lambda(y)}, error scale gamma (nu1^{-1} + n y^2), zone sqrt(n nu1).
MainTermPrediction predict_main_term_thm1(std::int64_t n_blocks, const MomentSet& ms, double x,
                                          const ZoneProxy& zp = {});

// Thm 2: tail ratio against Poisson(n lambda*(x)); main term e^{Lambda*(y)},
// error scale gamma sqrt(n nu1) (nu1^{-1} + n y^2), zone sqrt(n nu1).
MainTermPrediction predict_main_term_thm2(std::int64_t n_blocks, const MomentSet& ms, double x,
                                          const ZoneProxy& zp = {});

// Thm 3: adjacent-pairs vs NB; main term 1, zone min(np^2, n^{2/3} p^{2/3}).
MainTermPrediction predict_main_term_thm3(std::int64_t n, double p, double x,
                                          const ZoneProxy& zp = {});

// Thm 4: success-failure vs binomial; main term 1, zone min(np, n^{2/3}).
MainTermPrediction predict_main_term_thm4(std::int64_t n, double p, double x,
                                          const ZoneProxy& zp = {});

}  // namespace ldev
