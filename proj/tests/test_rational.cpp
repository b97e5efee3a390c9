#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <vector>

#include "ldev/rational.hpp"
#include "ldev/rng.hpp"

using namespace ldev;

TEST_CASE("Rational canonical form: lowest terms, positive denominator") {
  Rational half(2, 4);
  CHECK(half.numerator() == 1);
  CHECK(half.denominator() == 2);

  Rational neg(1, -2);
  CHECK(neg.numerator() == -1);
  CHECK(neg.denominator() == 2);
  CHECK(neg.is_negative());

  CHECK(Rational(0, 7) == Rational());
  CHECK(Rational(0, 7).is_zero());
}

TEST_CASE("Rational exact field operations") {
  Rational third(1, 3), sixth(1, 6);
  CHECK(third + sixth == Rational(1, 2));
  CHECK(third - sixth == Rational(1, 6));
  CHECK(third * sixth == Rational(1, 18));
  CHECK(third / sixth == Rational(2));
  CHECK(Rational(5) + Rational(-5) == Rational());
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(1, 3) != Rational(1, 2));
}

TEST_CASE("Rational::from_double is the exact binary value") {
  // 0.1 parses to 3602879701896397 / 2^55, not 1/10
  Rational r = Rational::from_double(0.1);
  CHECK(r.numerator() == 3602879701896397LL);
  CHECK(r.denominator() == Rational(2).pow(55).numerator());
  CHECK(r != Rational(1, 10));

  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(3.0) == Rational(3));
  CHECK(Rational::from_double(-0.75) == Rational(-3, 4));
  CHECK(Rational::from_double(0.0) == Rational());

  // subnormal double round trips exactly
  const double sub = 5e-324;
  CHECK(Rational::from_double(sub).to_double() == sub);
}

TEST_CASE("Rational pow and to_double") {
  CHECK(Rational(2, 3).pow(10) == Rational(1024, 59049));
  CHECK(Rational(2, 3).pow(0) == Rational(1));
  CHECK(Rational(1, 2).to_double() == 0.5);
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("Rational::log_value is accurate at tiny and huge bit counts") {
  CHECK(Rational(1, 2).log_value() == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
  CHECK(Rational(1).log_value() == 0.0);

  // (1/3)^1000: the numerator/denominator have ~1585 bits
  Rational big = Rational(1, 3).pow(1000);
  CHECK(big.log_value() == doctest::Approx(-1000.0 * std::log(3.0)).epsilon(1e-13));

  // beyond double range entirely: (1/2)^2000 has log -1386.29...
  Rational deep = Rational(1, 2).pow(2000);
  CHECK(deep.log_value() == doctest::Approx(-2000.0 * std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("Rational matches floating point on random factor chains") {
  // 1e4-factor product: log of the exact product vs the sum of double logs
  // agrees within 1e-12 relative (the doubles accumulate only rounding).
  // Blocked pairwise accumulation keeps per-multiply normalization cheap
  // even though the final numerator runs to ~500k bits.
  SplitMix64 rng(424242);
  std::vector<Rational> blocks;
  Rational block(1);
  double logsum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double f = rng.uniform(0.25, 1.0);
    block *= Rational::from_double(f);
    logsum += std::log(f);
    if ((i + 1) % 100 == 0) {
      blocks.push_back(block);
      block = Rational(1);
    }
  }
  while (blocks.size() > 1) {
    std::vector<Rational> next;
    for (std::size_t j = 0; j + 1 < blocks.size(); j += 2) next.push_back(blocks[j] * blocks[j + 1]);
    if (blocks.size() % 2 == 1) next.push_back(blocks.back());
    blocks.swap(next);
  }
  CHECK(blocks.front().log_value() == doctest::Approx(logsum).epsilon(1e-12));
}

TEST_CASE("Rational division by zero throws") {
  CHECK_THROWS(Rational(1) / Rational());
}
