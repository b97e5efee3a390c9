#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ldev::kernels {

// Minimal SIMD surface: the DP shift-add and the truncated polynomial
// convolution both reduce to axpy over contiguous doubles.  Backends must
// round identically to the scalar reference (mul then add, no FMA); the
// equivalence tests assert bitwise equality.
struct Backend {
  const char* name;
  // y[i] += a * x[i] for i in [0, len)
  void (*axpy)(double a, const double* x, double* y, std::size_t len);
  // y[i] *= a for i in [0, len)
  void (*scale)(double a, double* y, std::size_t len);
};

const Backend& scalar_backend();
#if defined(__x86_64__) || defined(__i386__)
const Backend& avx2_backend();
#endif
#if defined(__aarch64__)
const Backend& neon_backend();
#endif

// Backends usable on this machine (scalar first).
std::vector<const Backend*> available_backends();

// Currently selected backend.  Default: best available, unless the
// LDEV_KERNELS environment variable names one ("scalar", "avx2", "neon").
const Backend& active_backend();

// Force a backend by name; throws RegimeError if unavailable.
void force_backend(const std::string& name);

inline void axpy(double a, const double* x, double* y, std::size_t len) {
  active_backend().axpy(a, x, y, len);
}
inline void scale(double a, double* y, std::size_t len) {
  active_backend().scale(a, y, len);
}

}  // namespace ldev::kernels
