#include "ldev/logreal.hpp"

#include <algorithm>
#include <cmath>

namespace ldev {

LogReal log_sum_exp(std::span<const LogReal> xs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (const LogReal& x : xs) hi = std::max(hi, x.log_value());
  if (std::isinf(hi) && hi < 0) return LogReal::zero();  // empty or all zero
  double acc = 0.0;
  for (const LogReal& x : xs) {
    if (!x.is_zero()) acc += std::exp(x.log_value() - hi);
  }
  return LogReal::from_log(hi + std::log(acc));
}

}  // namespace ldev
