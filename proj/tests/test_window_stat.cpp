#include "doctest.h"

#include <vector>

#include "ldev/errors.hpp"
#include "ldev/exact_dist.hpp"
#include "ldev/window_stat.hpp"

using namespace ldev;

TEST_CASE("two_runs: width 2, pays only on the 11 window") {
  WindowStatistic s = WindowStatistic::two_runs();
  CHECK(s.width == 2);
  CHECK(s.name == "two_runs");
  REQUIRE(s.payoff.size() == 4);
  CHECK(s.payoff[0b00] == 0);
  CHECK(s.payoff[0b01] == 0);
  CHECK(s.payoff[0b10] == 0);
  CHECK(s.payoff[0b11] == 1);
  CHECK(s.max_payoff() == 1);
  CHECK(s.state_count() == 2);
}

TEST_CASE("n11_event: width 2, pays on success-then-failure") {
  WindowStatistic s = WindowStatistic::n11_event();
  CHECK(s.width == 2);
  CHECK(s.name == "n11");
  REQUIRE(s.payoff.size() == 4);
  // f(a,b) = a(1-b); index is (a<<1)|b with a the chronologically first bit
  CHECK(s.payoff[0b10] == 1);
  CHECK(s.payoff[0b00] == 0);
  CHECK(s.payoff[0b01] == 0);
  CHECK(s.payoff[0b11] == 0);
}

TEST_CASE("nk1k2_event: k1 failures then k2 successes") {
  WindowStatistic s = WindowStatistic::nk1k2_event(2, 1);
  CHECK(s.width == 3);
  CHECK(s.name == "nk1k2:2,1");
  REQUIRE(s.payoff.size() == 8);
  for (std::uint32_t v = 0; v < 8; ++v) {
    CHECK(s.payoff[v] == (v == 0b001 ? 1u : 0u));  // 0,0,1 chronologically
  }
  CHECK(s.max_payoff() == 1);
  CHECK(s.state_count() == 4);

  WindowStatistic t = WindowStatistic::nk1k2_event(1, 2);
  CHECK(t.payoff[0b011] == 1);  // 0,1,1

  CHECK_THROWS_AS(WindowStatistic::nk1k2_event(0, 1), RegimeError);
  CHECK_THROWS_AS(WindowStatistic::nk1k2_event(1, 0), RegimeError);
  CHECK_THROWS_AS(WindowStatistic::nk1k2_event(15, 15), RegimeError);
}

TEST_CASE("from_fn: payoff evaluated with bits in chronological order") {
  // copy of the first bit: f = bits[0]
  WindowStatistic first = WindowStatistic::from_fn(
      3, [](const std::vector<int>& b) { return static_cast<std::uint32_t>(b[0]); }, "first-bit");
  // MSB-first indexing: index 0b100 has chronological bits (1,0,0)
  CHECK(first.payoff[0b100] == 1);
  CHECK(first.payoff[0b011] == 0);
  CHECK(first.name == "first-bit");

  // parity of the window
  WindowStatistic parity = WindowStatistic::from_fn(
      2,
      [](const std::vector<int>& b) { return static_cast<std::uint32_t>((b[0] + b[1]) % 2); },
      "parity");
  CHECK(parity.payoff[0b01] == 1);
  CHECK(parity.payoff[0b10] == 1);
  CHECK(parity.payoff[0b00] == 0);
  CHECK(parity.payoff[0b11] == 0);

  CHECK_THROWS_AS(
      WindowStatistic::from_fn(0, [](const std::vector<int>&) { return 0u; }, "bad"),
      RegimeError);
  CHECK_THROWS_AS(
      WindowStatistic::from_fn(21, [](const std::vector<int>&) { return 0u; }, "bad"),
      RegimeError);
}

TEST_CASE("chain length is n_terms + width - 1") {
  BernoulliChainSpec chain{10, 0.5};
  CHECK(chain.chain_bits(2) == 11);
  CHECK(chain.chain_bits(3) == 12);
  CHECK(chain.chain_bits(1) == 10);
}

TEST_CASE("nk1k2(1,1) and n11 have identical laws (chain reversal)") {
  // The two payoffs mark the patterns 01 and 10; reversing the iid chain
  // maps one count to the other, so the distributions agree exactly.
  WindowStatistic a = WindowStatistic::n11_event();
  WindowStatistic b = WindowStatistic::nk1k2_event(1, 1);
  CHECK(a.payoff != b.payoff);  // genuinely different payoff tables

  BernoulliChainSpec chain{5, 1.0 / 3.0};
  RationalPMF pa = pmf_bruteforce(a, chain);
  RationalPMF pb = pmf_bruteforce(b, chain);
  REQUIRE(pa.masses.size() == pb.masses.size());
  for (std::size_t i = 0; i < pa.masses.size(); ++i) {
    CHECK(pa.masses[i] == pb.masses[i]);  // exact rational equality
  }
}
