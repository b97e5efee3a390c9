#pragma once

#include <cstdint>

namespace ldev {

// splitmix64: tiny, seedable, and identical on every platform, unlike the
// implementation-defined std:: distributions.  Used everywhere randomness
// feeds a reproducibility-sensitive report or test.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  // Independent stream derived from this one (for per-task seeding).
  SplitMix64 fork(std::uint64_t stream) {
    SplitMix64 s(state ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    s.next();
    return s;
  }
};

}  // namespace ldev
