#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ldev/logreal.hpp"
#include "ldev/quadrature.hpp"

namespace ldev {

// Probability mass function on {offset, offset+1, ..., offset+len-1} stored
// in log domain, with an optional exactly-lumped truncation cell above the
// top of the support.
class LatticePMF {
 public:
  LatticePMF() = default;
  LatticePMF(std::int64_t offset, std::vector<LogReal> masses, bool truncated = false,
             LogReal truncation_bound = LogReal::zero());

  std::int64_t offset() const { return offset_; }
  std::int64_t size() const { return static_cast<std::int64_t>(masses_.size()); }
  std::int64_t min_support() const { return offset_; }
  std::int64_t max_support() const { return offset_ + size() - 1; }

  // Mass at integer point x (zero outside the stored range).
  LogReal mass(std::int64_t x) const;
  const std::vector<LogReal>& masses() const { return masses_; }

  bool truncated() const { return truncated_; }
  // Exact lumped probability of { count > max_support }, up to rounding.
  LogReal truncation_bound() const { return truncation_bound_; }

  // Total stored mass (excluding the truncation cell).
  LogReal total_mass() const;

  // P(X >= x) from the stored masses plus the truncation cell (which lies
  // entirely above max_support, hence above any x <= max_support+1).
  LogReal tail_from(std::int64_t x) const;

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;

 private:
  std::int64_t offset_ = 0;
  std::vector<LogReal> masses_;
  bool truncated_ = false;
  LogReal truncation_bound_;
};

// E e^{uX} for complex u, evaluated with a max-shift in log domain so tilted
// arguments (Re u > 0) cannot overflow prematurely.
Cplx cf_eval(const LatticePMF& pmf, Cplx u);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// Mean/variance by direct summation.  Requires the truncation cell to be
// negligible (bound <= 1e-12), otherwise throws RegimeError.
Moments pmf_moments(const LatticePMF& pmf);

}  // namespace ldev
