#pragma once

#include <cstdint>
#include <vector>

namespace ldev {

// Polynomial in the count marker, truncated at degree cap, with the exact
// total weight of all dropped (degree > cap) terms accumulated in ovf.
// Lumping is exact: for a product, the dropped mass is
//   A.ovf*(sum B + B.ovf) + (sum A)*B.ovf + sum_{i+j>cap} a_i b_j,
// the last term collected via suffix sums of b.
struct TruncPoly {
  std::vector<double> c;  // c[d] = weight of marker^d, size <= cap+1
  double ovf = 0.0;

  double coeff_sum() const;
};

// c += a*b, both truncated at cap; dst.ovf receives the exact dropped mass.
void poly_mul_acc(const TruncPoly& a, const TruncPoly& b, std::int64_t cap, TruncPoly& dst);

TruncPoly poly_mul(const TruncPoly& a, const TruncPoly& b, std::int64_t cap);

}  // namespace ldev
