#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include "ldev/kernels.hpp"

namespace ldev::kernels {

// 4-wide double lanes.  Deliberately mul + add (no FMA) so the rounding
// matches the scalar reference bit for bit; the tail loop is the scalar
// loop.  This TU is compiled with -mavx2 and only ever called after a
// runtime cpuid check.
static void axpy_avx2(double a, const double* x, double* y, std::size_t len) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m256d vx = _mm256_loadu_pd(x + i);
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_add_pd(vy, _mm256_mul_pd(va, vx));
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < len; ++i) {
    y[i] += a * x[i];
  }
}

static void scale_avx2(double a, double* y, std::size_t len) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_mul_pd(va, _mm256_loadu_pd(y + i)));
  }
  for (; i < len; ++i) {
    y[i] *= a;
  }
}

const Backend& avx2_backend() {
  static const Backend b{"avx2", &axpy_avx2, &scale_avx2};
  return b;
}

}  // namespace ldev::kernels

#endif
