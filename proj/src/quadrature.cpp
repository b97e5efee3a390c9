#include "ldev/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "ldev/errors.hpp"

namespace ldev {

Cplx periodic_quadrature(const std::function<Cplx(double)>& f, int nodes) {
  if (nodes < 4) throw RegimeError("periodic_quadrature: need at least 4 nodes");
  const double pi = std::numbers::pi;
  Cplx acc(0.0, 0.0);
  for (int k = 0; k < nodes; ++k) {
    double t = -pi + 2.0 * pi * k / nodes;
    Cplx v = f(t);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw InstabilityError("periodic_quadrature: non-finite integrand value");
    }
    acc += v;
  }
  return acc / static_cast<double>(nodes);
}

}  // namespace ldev
