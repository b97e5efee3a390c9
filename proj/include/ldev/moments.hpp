#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ldev/window_stat.hpp"

namespace ldev {

// Grouping of m consecutive windows into one block.  With m >= width-1 the
// block sequence X_1, X_2, ... is 1-dependent: blocks that are not adjacent
// share no chain bits.
struct GroupedStatistic {
  WindowStatistic base;
  int m = 1;

  std::int64_t blocks(std::int64_t n_terms) const { return n_terms / m; }
  std::int64_t remainder(std::int64_t n_terms) const { return n_terms % m; }
  int block_bits() const { return m + base.width - 1; }
  int joint_bits() const { return 2 * m + base.width - 1; }

  // The block sum as a window statistic of width m+w-1 (one "window" = one
  // block), useful for exact cross-checks.
  WindowStatistic block_stat() const;
};

// Throws RegimeError unless m >= width-1 (1-dependence requirement).
GroupedStatistic group_blocks(const WindowStatistic& stat, int m);

// First/second factorial moments of one block, the adjacent-block product
// moment, and the maximum achievable block payoff.
struct MomentSet {
  double nu1 = 0.0;    // E X_1
  double nu2 = 0.0;    // E X_1 (X_1 - 1)
  double ex1x2 = 0.0;  // E X_1 X_2
  int c0 = 0;          // max block payoff (X_1 <= c0 always)
  std::int64_t n_blocks = 0;  // filled by callers that know the horizon
};

// Exact enumeration of the joint distribution of the 2m+w-1 chain bits
// spanning two adjacent blocks; rejects enumerations wider than 30 bits.
MomentSet block_moments(const WindowStatistic& stat, double p, int m);

// gamma = e^{1.5 c0} * max(nu1^2, nu2, E X1 X2).
double gamma_of(const MomentSet& ms);

// Relative deviation y = (x - n*nu1) / (n*nu1).
double rel_dev_y(std::int64_t n_blocks, double nu1, double x);

struct ConditionClause {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  double margin = 0.0;  // rhs - lhs
};

struct ConditionReport {
  std::vector<ConditionClause> clauses;
  bool all_pass = false;
  std::string mode;

  void write_json(std::ostream& os) const;
};

// Thresholds for the regime checks.  Strict mode uses exactly the constants
// 0.002, 1/10 and e^{-1.5 c0}/20; relaxed mode lets the caller loosen them.
struct ConditionThresholds {
  double e5nu1_max = 0.002;       // e^{5 c0} nu1 <= this
  double y_abs_max = 0.1;         // |y| <= this
  double pair_fraction = 0.05;    // nu2, E X1X2 <= nu1 e^{-1.5 c0} * this
  std::string mode_name = "strict";

  static ConditionThresholds strict() { return ConditionThresholds{}; }
  static ConditionThresholds relaxed(double e5nu1, double ymax, double frac);
};

ConditionReport check_conditions(const MomentSet& ms, std::int64_t n_blocks, double x,
                                 const ConditionThresholds& th = ConditionThresholds::strict());

}  // namespace ldev
