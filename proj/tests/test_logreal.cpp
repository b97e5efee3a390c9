#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "ldev/errors.hpp"
#include "ldev/logreal.hpp"
#include "ldev/rational.hpp"
#include "ldev/rng.hpp"

using namespace ldev;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("LogReal basics: zero, one, construction, accessors") {
  CHECK(LogReal::zero().is_zero());
  CHECK(LogReal::zero().log_value() == -kInf);
  CHECK(LogReal::zero().linear() == 0.0);
  CHECK(LogReal::one().log_value() == 0.0);
  CHECK(LogReal::one().linear() == 1.0);
  CHECK_FALSE(LogReal::one().is_zero());

  CHECK(LogReal::from_log(1.5).log_value() == 1.5);
  CHECK(LogReal::from_linear(0.0).is_zero());
  CHECK(LogReal::from_linear(1.0).log_value() == 0.0);

  CHECK_THROWS_AS(LogReal::from_linear(-1.0), RegimeError);
  CHECK_THROWS_AS(LogReal::from_linear(std::nan("")), RegimeError);
  CHECK_THROWS_AS(LogReal::from_log(std::nan("")), RegimeError);
}

TEST_CASE("LogReal multiplication and division are exact log-space adds") {
  LogReal a = LogReal::from_log(3.25);
  LogReal b = LogReal::from_log(-1.5);
  CHECK((a * b).log_value() == 3.25 + -1.5);
  CHECK((a / b).log_value() == 3.25 - -1.5);

  // zero absorbs multiplication, including against huge magnitudes
  CHECK((LogReal::zero() * LogReal::from_log(700.0)).is_zero());
  CHECK((LogReal::from_log(700.0) * LogReal::zero()).is_zero());

  CHECK_THROWS_AS(a / LogReal::zero(), RegimeError);
  CHECK((LogReal::zero() / a).is_zero());
}

TEST_CASE("LogReal addition: identity cases") {
  // [ln 1, ln 1] -> ln 2
  LogReal s = LogReal::one() + LogReal::one();
  CHECK(s.log_value() == doctest::Approx(std::log(2.0)).epsilon(1e-15));

  // adding zero is the identity, in both orders
  LogReal a = LogReal::from_log(-5.0);
  CHECK((a + LogReal::zero()).log_value() == -5.0);
  CHECK((LogReal::zero() + a).log_value() == -5.0);
  CHECK((LogReal::zero() + LogReal::zero()).is_zero());
}

TEST_CASE("LogReal addition far below linear range matches exact rational oracle") {
  // [ln 1e-200, ln 1e-200] -> ln 2e-200 within 1e-14 relative.
  // Oracle: exact rational value of the parsed double 1e-200, doubled, then
  // its log via the big-integer path (independent of the float LSE path).
  const double tiny = 1e-200;
  Rational exact = Rational::from_double(tiny) + Rational::from_double(tiny);
  const double oracle_log = exact.log_value();

  LogReal s = LogReal::from_linear(tiny) + LogReal::from_linear(tiny);
  CHECK(s.log_value() == doctest::Approx(oracle_log).epsilon(1e-14));
}

TEST_CASE("log_sum_exp: trivial and deep-underflow inputs") {
  SUBCASE("empty sequence is zero measure") {
    std::vector<LogReal> xs;
    CHECK(log_sum_exp(xs).is_zero());
  }
  SUBCASE("all-zero input stays zero") {
    std::vector<LogReal> xs{LogReal::zero(), LogReal::zero()};
    CHECK(log_sum_exp(xs).is_zero());
  }
  SUBCASE("[ln 1, ln 1] -> ln 2") {
    std::vector<LogReal> xs{LogReal::one(), LogReal::one()};
    CHECK(log_sum_exp(xs).log_value() == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  }
  SUBCASE("[-inf] -> -inf") {
    std::vector<LogReal> xs{LogReal::zero()};
    CHECK(log_sum_exp(xs).is_zero());
  }
  SUBCASE("max shift is exact: one dominant term comes back unchanged") {
    std::vector<LogReal> xs{LogReal::from_log(-900.0), LogReal::zero(), LogReal::from_log(-2000.0)};
    // -2000 is ~e^-1100 relative to the max; the sum rounds to the max exactly
    CHECK(log_sum_exp(xs).log_value() == doctest::Approx(-900.0).epsilon(1e-15));
  }
}

TEST_CASE("LogReal round trips at the achievable precision") {
  // Storing fl(log x) quantizes at half an ulp of log x, so the linear
  // round-trip error is inherently proportional to |log x| (about 6e-14 at
  // x = 1e250). Achievable bounds over [1e-300, 1e300]:
  //   |L - L'| <= 1e-14 * max(1, |L|)             (log-domain identity)
  //   linear rel error <= min(1e-13, 5e-16 * max(1, |log x|))
  SplitMix64 rng(20260815);
  for (int i = 0; i < 2000; ++i) {
    const double mag = rng.uniform(-300.0, 300.0);  // log10 scale
    const double x = std::pow(10.0, mag) * rng.uniform(1.0, 9.999);
    if (!(x > 0.0) || std::isinf(x)) continue;

    LogReal l = LogReal::from_linear(x);
    const double back = l.linear();
    const double rel = std::fabs(back - x) / x;
    CHECK(rel <= 1e-13);
    CHECK(rel <= 5e-16 * std::fmax(1.0, std::fabs(std::log(x))));

    const double lv = l.log_value();
    LogReal l2 = LogReal::from_linear(LogReal::from_log(lv).linear());
    CHECK(std::fabs(l2.log_value() - lv) <= 1e-14 * std::fmax(1.0, std::fabs(lv)));
  }
}

TEST_CASE("LogReal agrees with exact rational arithmetic on long chains") {
  // Random products and sums of up to 1e4 factors in [1e-30, 1]: the two
  // paths must agree within 1e-12 relative (in log scale for products).
  SplitMix64 rng(77001);

  SUBCASE("product of 1e4 factors") {
    // The exact product has a ~500k-bit numerator; accumulate it in
    // 100-factor blocks combined pairwise so normalization never runs a
    // gcd against the full-size intermediate on every step.
    LogReal prod = LogReal::one();
    std::vector<Rational> blocks;
    Rational block(1);
    for (int i = 0; i < 10000; ++i) {
      const double f = std::pow(10.0, rng.uniform(-30.0, 0.0));
      prod *= LogReal::from_linear(f);
      block *= Rational::from_double(f);
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
    const double lv = prod.log_value();
    const double oracle = blocks.front().log_value();
    CHECK(std::fabs(lv - oracle) <= 1e-12 * std::fabs(oracle));
  }

  SUBCASE("sums of 512 terms, several magnitudes") {
    for (int rep = 0; rep < 8; ++rep) {
      std::vector<LogReal> xs;
      Rational exact;
      for (int i = 0; i < 512; ++i) {
        const double f = std::pow(10.0, rng.uniform(-30.0, 0.0));
        xs.push_back(LogReal::from_linear(f));
        exact += Rational::from_double(f);
      }
      const double lse = log_sum_exp(xs).log_value();
      const double oracle = exact.log_value();
      CHECK(std::fabs(lse - oracle) <= 1e-12 * std::fmax(1.0, std::fabs(oracle)));
    }
  }
}

TEST_CASE("LogReal ordering and pow") {
  LogReal a = LogReal::from_linear(0.25);
  LogReal b = LogReal::from_linear(0.5);
  CHECK(a < b);
  CHECK(b > a);
  CHECK(a <= a);
  CHECK(a >= a);
  CHECK(a == a);
  CHECK(LogReal::zero() < a);

  CHECK(a.pow(2.0).log_value() == doctest::Approx(std::log(0.0625)).epsilon(1e-15));
  CHECK(LogReal::zero().pow(3.0).is_zero());
  CHECK(b.pow(0.0).log_value() == 0.0);
}
