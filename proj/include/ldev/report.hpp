#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldev/config.hpp"
#include "ldev/moments.hpp"
#include "ldev/predict.hpp"
#include "ldev/window_stat.hpp"

namespace ldev {

// x-selection rule for ratio reports.
struct XRange {
  enum class Kind { absolute, mean_pm_sd, zone_proxy, explicit_list, sd_offsets };
  Kind kind = Kind::mean_pm_sd;
  std::int64_t lo = 0, hi = 0;          // absolute
  double c = 2.0;                       // mean_pm_sd / zone_proxy multiplier
  std::vector<std::int64_t> xs;         // explicit_list
  std::vector<double> offsets;          // sd_offsets: x = mean + offset*sd
};

struct RatioArgs {
  int theorem = 3;
  WindowStatistic stat;       // defaulted per theorem when payoff is empty
  int m = 1;                  // block size (theorems 1-2)
  std::int64_t n = 0;         // theorems 1-2: number of blocks; 3-4: n_terms
  double p = 0.0;
  XRange xrange;
  std::string method = "auto";    // auto | dp | matpow
  std::string cap_rule = "auto";  // auto | none | <integer>
  ConditionThresholds cond = ConditionThresholds::strict();
  ZoneProxy zone;
  Tuning tuning;
  std::uint64_t seed = 0;
};

struct RatioRow {
  std::int64_t x = 0;
  double y = 0.0;
  double log_exact = 0.0;       // log pmf (thm 1/3/4) or log tail (thm 2)
  double log_approx = 0.0;
  double ratio = 0.0;           // exp(log_exact - log_approx)
  double log_main_term = 0.0;
  double ratio_over_main = 0.0;
  double error_scale = 0.0;     // thm 1/2
  double lambda_star = 0.0;     // thm 2
  double saddle_a = 0.0;        // h (1), z (2), w (3), htilde (4)
  double saddle_b = 0.0;        // z (1), unused otherwise
  bool cond_ok = true;
  bool zone_ok = true;
  bool skipped = false;
  std::string skip_reason;
};

struct RatioReport {
  int theorem = 0;
  // Ordered key/value header echoed into CSV comments and JSON; includes
  // the inputs, moments, gamma, cap/truncation, fitted K and the metric.
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<RatioRow> rows;
  double metric = 0.0;    // max |ratio-1| (thm 3/4) or max |ratio/main-1| (thm 1/2)
  double fitted_k = 0.0;  // thm 1/2: max |ratio/main-1| / error_scale

  std::string to_csv() const;
  std::string to_json() const;
};

RatioReport run_ratio(const RatioArgs& args);

struct SweepPoint {
  std::int64_t n = 0;
  double p = 0.0;
};

struct SweepConfigData {
  RatioArgs base;
  std::vector<SweepPoint> schedule;
  std::string out_dir;
  int workers = 1;

  static SweepConfigData from_config(const Config& cfg);
};

struct SweepPointOutcome {
  SweepPoint point;
  bool ok = false;
  bool skipped = false;       // empty zone etc.
  std::string error;
  RatioReport report;
  double metric = 0.0;
};

struct SweepResult {
  std::vector<SweepPointOutcome> points;
  bool strictly_decreasing = false;
  bool any_error = false;

  std::string summary_csv() const;
  std::string summary_json() const;
};

// Runs the schedule (optionally with a worker pool; results are pure and
// merged in schedule order) and, when out_dir is non-empty, writes
// point_<i>.csv/.json plus summary.csv/summary.json.
SweepResult run_sweep(const SweepConfigData& cfg);

}  // namespace ldev
