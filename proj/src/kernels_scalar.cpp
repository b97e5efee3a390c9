#include "ldev/kernels.hpp"

namespace ldev::kernels {

// Reference path.  Plain mul-then-add: the build forbids FMA contraction so
// this rounds identically to the vector backends.
static void axpy_scalar(double a, const double* x, double* y, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    y[i] += a * x[i];
  }
}

static void scale_scalar(double a, double* y, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    y[i] *= a;
  }
}

const Backend& scalar_backend() {
  static const Backend b{"scalar", &axpy_scalar, &scale_scalar};
  return b;
}

}  // namespace ldev::kernels
