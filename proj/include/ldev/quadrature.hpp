#pragma once

#include <complex>
#include <functional>

namespace ldev {

using Cplx = std::complex<double>;

inline Cplx expi(double t) { return Cplx(std::cos(t), std::sin(t)); }

// Normalized integral (1/2pi) * Int_{-pi}^{pi} f(t) dt by the uniform
// (periodic trapezoid) rule, which is exact for trigonometric polynomials of
// degree < nodes.  nodes < 4 is rejected.
Cplx periodic_quadrature(const std::function<Cplx(double)>& f, int nodes);

}  // namespace ldev
