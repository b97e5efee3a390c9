#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ldev {

// Payoff function f: {0,1}^w -> N evaluated on a width-w window sliding over
// an iid Bernoulli(p) chain.  The statistic is S = sum_{j=1}^{n_terms}
// f(eta_j, ..., eta_{j+w-1}); the chain has exactly n_terms + w - 1 bits and
// the first window starts at bit 1.
//
// Window patterns are indexed chronologically MSB-first: the oldest bit of
// the window is the highest bit of the index.  With state = last w-1 bits
// (same convention) and incoming bit b, the window index is (state<<1)|b and
// the successor state is that value masked to w-1 bits.
struct WindowStatistic {
  int width = 1;
  std::vector<std::uint32_t> payoff;  // size 1 << width
  std::string name;

  std::uint32_t max_payoff() const;
  int state_count() const { return 1 << (width - 1); }

  // f(a,b) = a*b: counts adjacent success pairs.
  static WindowStatistic two_runs();
  // f(a,b) = a*(1-b): success immediately followed by failure.
  static WindowStatistic n11_event();
  // k1 failures followed by k2 successes (width k1+k2).
  static WindowStatistic nk1k2_event(int k1, int k2);
  // Arbitrary payoff from a function of the window bits; bits[0] is the
  // chronologically first bit of the window.
  static WindowStatistic from_fn(int width, const std::function<std::uint32_t(const std::vector<int>&)>& fn,
                                 std::string name);
};

struct BernoulliChainSpec {
  std::int64_t n_terms = 0;  // number of windows
  double p = 0.0;            // success probability

  std::int64_t chain_bits(int width) const { return n_terms + width - 1; }
};

}  // namespace ldev
