#include "ldev/trunc_poly.hpp"

#include <algorithm>

#include "ldev/errors.hpp"
#include "ldev/kernels.hpp"

namespace ldev {

double TruncPoly::coeff_sum() const {
  double s = 0.0;
  for (double v : c) s += v;
  return s;
}

void poly_mul_acc(const TruncPoly& a, const TruncPoly& b, std::int64_t cap, TruncPoly& dst) {
  if (cap < 0) throw RegimeError("poly_mul_acc: negative cap");
  const auto la = static_cast<std::int64_t>(a.c.size());
  const auto lb = static_cast<std::int64_t>(b.c.size());
  const std::int64_t full = la + lb - 1;
  const std::int64_t keep = std::min(full, cap + 1);
  if (static_cast<std::int64_t>(dst.c.size()) < keep) dst.c.resize(static_cast<std::size_t>(keep), 0.0);

  // Suffix sums of b for the exact lumped overflow of dropped cross terms.
  std::vector<double> suffix(static_cast<std::size_t>(lb) + 1, 0.0);
  for (std::int64_t j = lb - 1; j >= 0; --j) {
    suffix[static_cast<std::size_t>(j)] =
        suffix[static_cast<std::size_t>(j) + 1] + b.c[static_cast<std::size_t>(j)];
  }

  double ovf = 0.0;
  double a_sum = 0.0;
  for (std::int64_t i = 0; i < la; ++i) {
    double ai = a.c[static_cast<std::size_t>(i)];
    a_sum += ai;
    if (ai == 0.0) continue;
    std::int64_t jmax = std::min(lb - 1, cap - i);
    if (jmax >= 0) {
      kernels::axpy(ai, b.c.data(), dst.c.data() + i, static_cast<std::size_t>(jmax) + 1);
    }
    std::int64_t jdrop = std::max<std::int64_t>(jmax + 1, 0);
    if (jdrop < lb) ovf += ai * suffix[static_cast<std::size_t>(jdrop)];
  }
  // Cross terms involving either lumped cell.
  ovf += a.ovf * (suffix[0] + b.ovf) + a_sum * b.ovf;
  dst.ovf += ovf;
}

TruncPoly poly_mul(const TruncPoly& a, const TruncPoly& b, std::int64_t cap) {
  TruncPoly out;
  poly_mul_acc(a, b, cap, out);
  return out;
}

}  // namespace ldev
