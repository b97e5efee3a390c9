#include "ldev/kernels.hpp"

#include <cstdlib>

#include "ldev/errors.hpp"

namespace ldev::kernels {

std::vector<const Backend*> available_backends() {
  std::vector<const Backend*> v{&scalar_backend()};
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) v.push_back(&avx2_backend());
#endif
#if defined(__aarch64__)
  v.push_back(&neon_backend());
#endif
  return v;
}

namespace {

const Backend* pick_default() {
  auto v = available_backends();
  if (const char* env = std::getenv("LDEV_KERNELS")) {
    for (const Backend* b : v) {
      if (std::string(b->name) == env) return b;
    }
    // Unknown/unavailable request in the environment falls back to default.
  }
  return v.back();  // best available (scalar is always index 0)
}

const Backend*& active_slot() {
  static const Backend* active = pick_default();
  return active;
}

}  // namespace

const Backend& active_backend() { return *active_slot(); }

void force_backend(const std::string& name) {
  for (const Backend* b : available_backends()) {
    if (name == b->name) {
      active_slot() = b;
      return;
    }
  }
  throw RegimeError("kernel backend not available: " + name);
}

}  // namespace ldev::kernels
