#if defined(__aarch64__)

#include <arm_neon.h>

#include "ldev/kernels.hpp"

namespace ldev::kernels {

// 2-wide double lanes; mul + add (vaddq/vmulq, not vfmaq) to match the
// scalar reference rounding exactly.
static void axpy_neon(double a, const double* x, double* y, std::size_t len) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    float64x2_t vx = vld1q_f64(x + i);
    float64x2_t vy = vld1q_f64(y + i);
    vy = vaddq_f64(vy, vmulq_f64(va, vx));
    vst1q_f64(y + i, vy);
  }
  for (; i < len; ++i) {
    y[i] += a * x[i];
  }
}

static void scale_neon(double a, double* y, std::size_t len) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    vst1q_f64(y + i, vmulq_f64(va, vld1q_f64(y + i)));
  }
  for (; i < len; ++i) {
    y[i] *= a;
  }
}

const Backend& neon_backend() {
  static const Backend b{"neon", &axpy_neon, &scale_neon};
  return b;
}

}  // namespace ldev::kernels

#endif
