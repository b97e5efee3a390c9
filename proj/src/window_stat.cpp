#include "ldev/window_stat.hpp"

#include <algorithm>

#include "ldev/errors.hpp"

namespace ldev {

std::uint32_t WindowStatistic::max_payoff() const {
  return *std::max_element(payoff.begin(), payoff.end());
}

WindowStatistic WindowStatistic::two_runs() {
  // index bits: (first << 1) | second
  WindowStatistic s;
  s.width = 2;
  s.payoff = {0, 0, 0, 1};  // only 11 pays
  s.name = "two_runs";
  return s;
}

WindowStatistic WindowStatistic::n11_event() {
  WindowStatistic s;
  s.width = 2;
  s.payoff = {0, 0, 1, 0};  // only 10 pays (success then failure)
  s.name = "n11";
  return s;
}

WindowStatistic WindowStatistic::nk1k2_event(int k1, int k2) {
  if (k1 < 1 || k2 < 1) throw RegimeError("nk1k2_event: k1, k2 must be >= 1");
  int w = k1 + k2;
  if (w > 20) throw RegimeError("nk1k2_event: window wider than 20 bits");
  WindowStatistic s;
  s.width = w;
  s.payoff.assign(std::size_t(1) << w, 0);
  // chronologically k1 zeros then k2 ones, MSB-first index
  std::uint32_t pattern = (1u << k2) - 1u;
  s.payoff[pattern] = 1;
  s.name = "nk1k2:" + std::to_string(k1) + "," + std::to_string(k2);
  return s;
}

WindowStatistic WindowStatistic::from_fn(
    int width, const std::function<std::uint32_t(const std::vector<int>&)>& fn, std::string name) {
  if (width < 1 || width > 20) throw RegimeError("WindowStatistic: width out of range [1,20]");
  WindowStatistic s;
  s.width = width;
  s.payoff.assign(std::size_t(1) << width, 0);
  std::vector<int> bits(width);
  for (std::uint32_t v = 0; v < s.payoff.size(); ++v) {
    for (int i = 0; i < width; ++i) bits[i] = (v >> (width - 1 - i)) & 1u;
    s.payoff[v] = fn(bits);
  }
  s.name = std::move(name);
  return s;
}

}  // namespace ldev
