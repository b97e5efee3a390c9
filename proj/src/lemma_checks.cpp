#include "ldev/lemma_checks.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "ldev/approx_family.hpp"
#include "ldev/cramer_series.hpp"
#include "ldev/errors.hpp"
#include "ldev/exact_dist.hpp"
#include "ldev/heinrich.hpp"
#include "ldev/metrics.hpp"
#include "ldev/rng.hpp"
#include "ldev/saddle.hpp"
#include "ldev/tilt.hpp"
#include "ldev/window_stat.hpp"

namespace ldev {

namespace {

std::string describe(const char* label, double value) {
  std::ostringstream os;
  os.precision(6);
  os << label << value;
  return os.str();
}

}  // namespace

LemmaCheckResult check_gamma_bounds(const LemmaGrid& grid) {
  LemmaCheckResult out;
  out.name = "gamma_bracket";
  out.worst_margin = std::numeric_limits<double>::infinity();
  double worst_x = grid.lo;
  for (double x = grid.lo; x <= grid.hi; x += grid.step) {
    const GammaBoundsResult r = gamma_bounds_check(x);
    const double margin = std::min(r.lower_margin, r.upper_margin);
    if (margin < out.worst_margin) {
      out.worst_margin = margin;
      worst_x = x;
    }
  }
  out.pass = out.worst_margin > 0.0;
  out.detail = describe("smallest log-scale slack at x=", worst_x);
  return out;
}

LemmaCheckResult check_inversion_bound(std::uint64_t seed, int trials) {
  LemmaCheckResult out;
  out.name = "tv_inversion_bound";
  out.worst_margin = std::numeric_limits<double>::infinity();
  SplitMix64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    SignedLatticeMeasure m;
    m.offset = rng.uniform_int(-5, 5);
    const int len = static_cast<int>(rng.uniform_int(3, 12));
    m.masses.resize(static_cast<std::size_t>(len));
    for (auto& v : m.masses) v = rng.uniform(-1.0, 1.0);
    const double a = rng.uniform(-3.0, 3.0);
    const double b = rng.uniform(0.1, 5.0);
    const double lhs = tv_norm(m);
    const double rhs = inversion_bound_rhs(m, a, b);
    const double margin = rhs - lhs;
    out.worst_margin = std::min(out.worst_margin, margin);
  }
  out.pass = out.worst_margin > -1e-12;
  out.detail = describe("smallest rhs-lhs gap over random signed measures: ", out.worst_margin);
  return out;
}

LemmaCheckResult check_conjugate_inversion() {
  LemmaCheckResult out;
  out.name = "conjugate_inversion";
  out.worst_margin = 0.0;
  const WindowStatistic stat = WindowStatistic::two_runs();
  const LatticePMF pmf = pmf_dp(stat, BernoulliChainSpec{6, 0.3});
  for (double z : {0.0, 0.2, 0.5, 1.0}) {
    for (std::int64_t m = pmf.min_support(); m <= pmf.max_support(); ++m) {
      out.worst_margin = std::max(out.worst_margin, inversion_check(pmf, z, m));
    }
  }
  out.pass = out.worst_margin <= 1e-10;
  out.detail = describe("largest relative recovery residual: ", out.worst_margin);
  return out;
}

LemmaCheckResult check_poisson_tilt_identity() {
  LemmaCheckResult out;
  out.name = "poisson_saddle_product";
  out.worst_margin = 0.0;
  // log Poisson(lambda){x} must equal (normalizer - z x) + log Poisson(x){x}
  // for the tilt z = ln(x/lambda).
  for (double lambda : {0.5, 2.0, 10.0, 100.0, 2000.0}) {
    for (double rel : {0.7, 0.9, 1.0, 1.1, 1.3}) {
      const double xd = std::max(1.0, std::round(lambda * rel));
      const std::int64_t x = static_cast<std::int64_t>(xd);
      const SaddleSolution z = saddle_poisson_z(1.0, lambda, xd);
      const double lhs = xd * std::log(lambda) - lambda - std::lgamma(xd + 1.0);
      const double rhs =
          z.log_normalizer - z.value * xd + xd * std::log(xd) - xd - std::lgamma(xd + 1.0);
      const double res = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
      out.worst_margin = std::max(out.worst_margin, res);
      (void)x;
    }
  }
  out.pass = out.worst_margin <= 1e-11;
  out.detail = describe("largest log-scale residual: ", out.worst_margin);
  return out;
}

LemmaCheckResult check_nb_tilt_identity() {
  LemmaCheckResult out;
  out.name = "nb_saddle_product";
  out.worst_margin = 0.0;
  for (std::int64_t n : {200, 1000, 5000}) {
    const double p = 0.05;
    const NBParams np = nb_params(n, p);
    const ApproxFamily nb = ApproxFamily::neg_binomial(np);
    const double mean = nb.mean();
    for (double rel : {0.8, 1.0, 1.2}) {
      const std::int64_t x = std::max<std::int64_t>(1, std::llround(mean * rel));
      const double xd = static_cast<double>(x);
      const SaddleSolution w = saddle_nb_w(np.r, np.pbar, xd);
      // Pmf factorization through the conjugate family NB(r, r/(r+x)).
      const ApproxFamily conj = ApproxFamily::neg_binomial(np.r, np.r / (np.r + xd));
      const double lhs = nb.pmf(x).log_value();
      const double rhs = -w.value * xd + w.log_normalizer + conj.pmf(x).log_value();
      double res = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
      // CF ratio identity at the tilt: Fhat(w+it)/Fhat(w) = conj CF(it).
      for (double t : {0.3, 1.0, 2.5}) {
        const Cplx ratio = nb.cf(Cplx(w.value, t)) / nb.cf(Cplx(w.value, 0.0));
        const Cplx expect = conj.cf(Cplx(0.0, t));
        res = std::max(res, std::abs(ratio - expect));
      }
      out.worst_margin = std::max(out.worst_margin, res);
    }
  }
  out.pass = out.worst_margin <= 1e-11;
  out.detail = describe("largest residual across pmf and cf forms: ", out.worst_margin);
  return out;
}

LemmaCheckResult check_bi_tilt_identity() {
  LemmaCheckResult out;
  out.name = "bi_saddle_product";
  out.worst_margin = 0.0;
  for (std::int64_t n : {100, 1000, 10000}) {
    const double p = 0.05;
    const BIParams bp = bi_params(n, p);
    const ApproxFamily bi = ApproxFamily::binomial(bp);
    const double mean = bi.mean();
    for (double rel : {0.8, 1.0, 1.2}) {
      const std::int64_t x = std::max<std::int64_t>(1, std::llround(mean * rel));
      if (x >= bp.trials) continue;
      const double xd = static_cast<double>(x);
      const SaddleSolution h = saddle_bi_htilde(bp.trials, bp.ptilde, xd);
      const ApproxFamily conj =
          ApproxFamily::binomial(bp.trials, xd / static_cast<double>(bp.trials));
      const double lhs = bi.pmf(x).log_value();
      const double rhs = -h.value * xd + h.log_normalizer + conj.pmf(x).log_value();
      double res = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
      for (double t : {0.3, 1.0, 2.5}) {
        const Cplx ratio = bi.cf(Cplx(h.value, t)) / bi.cf(Cplx(h.value, 0.0));
        const Cplx expect = conj.cf(Cplx(0.0, t));
        res = std::max(res, std::abs(ratio - expect));
      }
      out.worst_margin = std::max(out.worst_margin, res);
    }
  }
  out.pass = out.worst_margin <= 1e-11;
  out.detail = describe("largest residual across pmf and cf forms: ", out.worst_margin);
  return out;
}

LemmaCheckResult check_moment_bracket_bound(std::uint64_t seed) {
  LemmaCheckResult out;
  out.name = "bracket_magnitude_bound";
  out.worst_margin = 0.0;
  SplitMix64 rng(seed);
  const WindowStatistic stats[] = {WindowStatistic::two_runs(), WindowStatistic::n11_event()};
  for (const WindowStatistic& stat : stats) {
    for (int m : {2, 3}) {
      for (double p : {0.02, 0.1}) {
        const BlockMomentOracle oracle(stat, p, m, 6);
        for (int trial = 0; trial < 12; ++trial) {
          const Cplx u(rng.uniform(0.0, 0.3), rng.uniform(-M_PI, M_PI));
          const HatESeries hats = heinrich_hat_e(oracle, u, 6);
          out.worst_margin = std::max(out.worst_margin, hats.max_bound_ratio);
        }
      }
    }
  }
  out.pass = out.worst_margin <= 1.0 + 1e-9;
  out.detail = describe("largest |bracket|/bound ratio: ", out.worst_margin);
  return out;
}

LemmaCheckResult check_cf_tilt_ratio(std::uint64_t seed) {
  LemmaCheckResult out;
  out.name = "tilted_cf_ratio";
  out.worst_margin = 0.0;
  SplitMix64 rng(seed);
  // (1 + nu1(e^{h+it}-1)) / (1 + nu1(e^h-1)) = 1 + (x/n)(e^{it}-1) with
  // x/n = nu1 e^h / (1 + nu1(e^h-1)).
  for (int trial = 0; trial < 200; ++trial) {
    const double nu1 = rng.uniform(1e-5, 0.1);
    const double y = rng.uniform(-0.1, 0.1);
    const double n = 1000.0;
    const double x = n * nu1 * (1.0 + y);
    const SaddleSolution h = saddle_binomial_h(n, nu1, x);
    const double eh = 1.0 + h.expm1;
    const double xn = nu1 * eh / (1.0 + nu1 * h.expm1);
    for (double t : {0.1, 0.7, 2.0, 3.0}) {
      const Cplx lhs = (1.0 + nu1 * (std::exp(Cplx(h.value, t)) - 1.0)) /
                       (1.0 + nu1 * h.expm1);
      const Cplx rhs = 1.0 + xn * (expi(t) - 1.0);
      out.worst_margin = std::max(out.worst_margin, std::abs(lhs - rhs));
    }
  }
  out.pass = out.worst_margin <= 1e-12;
  out.detail = describe("largest two-sided gap: ", out.worst_margin);
  return out;
}

LemmaCheckResult check_series_closed_forms() {
  LemmaCheckResult out;
  out.name = "series_closed_forms";
  out.worst_margin = 0.0;
  const double n = 1000.0;
  for (double nu1 : {1e-4, 1e-3, 1e-2, 5e-2}) {
    for (double y = -0.1; y <= 0.1005; y += 0.02) {
      if (std::abs(y) < 1e-12) continue;
      const SeriesValue a = lambda_series(n, nu1, y);
      const SeriesValue b = lambda_star_series(n, nu1, y);
      const double ra =
          std::abs(a.value - a.closed_form) / std::max(std::abs(a.closed_form), 1e-30);
      const double rb =
          std::abs(b.value - b.closed_form) / std::max(std::abs(b.closed_form), 1e-30);
      out.worst_margin = std::max(out.worst_margin, std::max(ra, rb));
    }
  }
  out.pass = out.worst_margin <= 1e-12;
  out.detail = describe("largest series-vs-closed-form relative gap: ", out.worst_margin);
  return out;
}

LemmaCheckResult check_tilting_identity() {
  LemmaCheckResult out;
  out.name = "binomial_exponent_identity";
  out.worst_margin = 0.0;
  // [n ln(1 + nu1(e^h-1)) - h x] - [n nu1 (e^z-1) - z x] must equal the
  // correction exponent Lambda(y) for every admissible (n, nu1, y).
  for (double n : {100.0, 1000.0, 50000.0}) {
    for (double nu1 : {1e-4, 1e-3, 1e-2}) {
      for (double y = -0.1; y <= 0.1005; y += 0.025) {
        if (std::abs(y) < 1e-12) continue;
        const double x = n * nu1 * (1.0 + y);
        const SaddleSolution h = saddle_binomial_h(n, nu1, x);
        const SaddleSolution z = saddle_poisson_z(n, nu1, x);
        const double lhs = (h.log_normalizer - h.value * x) - (z.log_normalizer - z.value * x);
        const double lam = lambda_series(n, nu1, y).closed_form;
        const double res = std::abs(lhs - lam) / std::max(std::abs(lam), 1e-30);
        out.worst_margin = std::max(out.worst_margin, res);
      }
    }
  }
  out.pass = out.worst_margin <= 1e-9;
  out.detail = describe("largest relative gap between exponent forms: ", out.worst_margin);
  return out;
}

std::vector<LemmaCheckResult> run_all_lemma_checks(std::uint64_t seed, const LemmaGrid& grid) {
  std::vector<LemmaCheckResult> out;
  out.push_back(check_gamma_bounds(grid));
  out.push_back(check_inversion_bound(seed, 200));
  out.push_back(check_conjugate_inversion());
  out.push_back(check_poisson_tilt_identity());
  out.push_back(check_nb_tilt_identity());
  out.push_back(check_bi_tilt_identity());
  out.push_back(check_moment_bracket_bound(seed + 1));
  out.push_back(check_cf_tilt_ratio(seed + 2));
  out.push_back(check_series_closed_forms());
  out.push_back(check_tilting_identity());
  return out;
}

std::vector<std::string> lemma_check_names() {
  return {"gamma_bracket",        "tv_inversion_bound",      "conjugate_inversion",
          "poisson_saddle_product", "nb_saddle_product",     "bi_saddle_product",
          "bracket_magnitude_bound", "tilted_cf_ratio",      "series_closed_forms",
          "binomial_exponent_identity"};
}

}  // namespace ldev
