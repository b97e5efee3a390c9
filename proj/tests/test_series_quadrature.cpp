#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "ldev/errors.hpp"
#include "ldev/exact_dist.hpp"
#include "ldev/quadrature.hpp"
#include "ldev/rng.hpp"
#include "ldev/series.hpp"
#include "ldev/window_stat.hpp"

using namespace ldev;

TEST_CASE("series_sum: geometric series from j=2 sums to 1/2") {
  auto term = [](int j) { return std::pow(0.5, j); };
  SeriesSum s = series_sum(term, 2, 1e-15, 100000);
  CHECK(s.value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.terms_used > 10);
  CHECK(s.tail_bound <= 1e-14);
}

TEST_CASE("series_sum: all-zero terms converge to 0") {
  auto term = [](int) { return 0.0; };
  SeriesSum s = series_sum(term, 2, 1e-15, 1000);
  CHECK(s.value == 0.0);
}

TEST_CASE("series_sum: non-convergence raises with diagnostics") {
  auto term = [](int) { return 1.0; };  // constant terms never converge
  CHECK_THROWS_AS(series_sum(term, 0, 1e-15, 50), ConvergenceError);
  try {
    series_sum(term, 0, 1e-15, 50);
  } catch (const ConvergenceError& e) {
    CHECK(e.terms_used == 50);
    CHECK(e.last_tail_estimate > 0.0);
  }
}

TEST_CASE("series_sum: tail-parameter series matches its closed form") {
  // sum_{j>=2} t^j / j = -ln(1-t) - t, here scaled by n = 10 with
  // t = nu1*y/(1-nu1), nu1 = 0.1, y = 0.05.
  const double nu1 = 0.1, y = 0.05, n = 10.0;
  const long double t = static_cast<long double>(nu1) * y / (1.0L - nu1);
  const double closed = static_cast<double>(-n * (std::log1p(-t) + t));

  auto term = [&](int j) { return n * std::pow(static_cast<double>(t), j) / j; };
  SeriesSum s = series_sum(term, 2, 1e-16, 100000);
  CHECK(s.value == doctest::Approx(closed).epsilon(1e-13));
}

TEST_CASE("periodic_quadrature: constants and orthogonality") {
  SUBCASE("f = 1 integrates to 1 (normalized)") {
    Cplx v = periodic_quadrature([](double) { return Cplx(1.0, 0.0); }, 8);
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::fabs(v.imag()) <= 1e-15);
  }
  SUBCASE("e^{it} against e^{-it} -> 1") {
    Cplx v = periodic_quadrature([](double t) { return expi(t) * expi(-t); }, 8);
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("distinct frequencies are orthogonal") {
    Cplx v = periodic_quadrature([](double t) { return expi(3.0 * t) * expi(-t); }, 16);
    CHECK(std::abs(v) <= 1e-14);
  }
  SUBCASE("node counts below 4 are rejected") {
    CHECK_THROWS_AS(periodic_quadrature([](double) { return Cplx(1.0, 0.0); }, 3), RegimeError);
  }
}

TEST_CASE("periodic_quadrature is exact on trigonometric polynomials") {
  // Random degree-13 trig polynomial; with > 2*13+1 nodes every Fourier
  // coefficient is recovered within 1e-13 relative.
  SplitMix64 rng(9099);
  const int d = 13;
  std::vector<Cplx> coef(2 * d + 1);
  for (auto& c : coef) c = Cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  auto f = [&](double t) {
    Cplx acc(0.0, 0.0);
    for (int k = -d; k <= d; ++k) acc += coef[static_cast<std::size_t>(k + d)] * expi(k * t);
    return acc;
  };
  for (int k = -d; k <= d; ++k) {
    Cplx got = periodic_quadrature([&](double t) { return f(t) * expi(-k * t); }, 2 * d + 5);
    Cplx want = coef[static_cast<std::size_t>(k + d)];
    CHECK(std::abs(got - want) <= 1e-13 * std::fmax(1.0, std::abs(want)));
  }
}

TEST_CASE("periodic_quadrature recovers a PMF value from its CF") {
  // P(S = 2) for the adjacent-pairs statistic, n_terms = 3, p = 1/2,
  // via (1/2pi) Int CF(it) e^{-2it} dt, against the exact enumeration.
  WindowStatistic stat = WindowStatistic::two_runs();
  BernoulliChainSpec chain{3, 0.5};
  RationalPMF oracle = pmf_bruteforce(stat, chain);
  REQUIRE(oracle.masses.size() == 4);

  LatticePMF pmf = pmf_dp(stat, chain);
  Cplx got = periodic_quadrature(
      [&](double t) { return cf_eval(pmf, Cplx(0.0, t)) * expi(-2.0 * t); }, 2 * 3 + 5);
  const double want = oracle.masses[2].to_double();
  CHECK(std::fabs(got.real() - want) <= 1e-14);
  CHECK(std::fabs(got.imag()) <= 1e-14);
}
