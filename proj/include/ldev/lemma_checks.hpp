#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ldev {

// One named validation suite (an inequality or identity from the analysis,
// checked numerically on grids or randomized instances).
struct LemmaCheckResult {
  std::string name;
  bool pass = false;
  double worst_margin = 0.0;  // smallest slack (inequalities) or largest residual (identities)
  std::string detail;
};

struct LemmaGrid {
  double lo = 1.0;
  double hi = 1000.0;
  double step = 0.5;
};

// Individual suites.  All deterministic given the seed.
LemmaCheckResult check_gamma_bounds(const LemmaGrid& grid);
LemmaCheckResult check_inversion_bound(std::uint64_t seed, int trials);
LemmaCheckResult check_conjugate_inversion();
LemmaCheckResult check_poisson_tilt_identity();
LemmaCheckResult check_nb_tilt_identity();
LemmaCheckResult check_bi_tilt_identity();
LemmaCheckResult check_moment_bracket_bound(std::uint64_t seed);
LemmaCheckResult check_cf_tilt_ratio(std::uint64_t seed);
LemmaCheckResult check_series_closed_forms();
LemmaCheckResult check_tilting_identity();

// All suites in a fixed order; names usable with `verify-lemmas --only`.
std::vector<LemmaCheckResult> run_all_lemma_checks(std::uint64_t seed, const LemmaGrid& grid);
std::vector<std::string> lemma_check_names();

}  // namespace ldev
