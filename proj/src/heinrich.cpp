#include "ldev/heinrich.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "ldev/errors.hpp"
#include "ldev/exact_dist.hpp"

namespace ldev {

namespace {

// Multiplies factors in log space so intermediate products can leave double
// range without overflowing; exp at the end restores the true product
// (exp(log a + log b) = a b on every branch).
class ProductAccumulator {
 public:
  void multiply(Cplx factor) {
    if (std::abs(factor) < 0.1) {
      throw InstabilityError("factor recursion: |factor| fell below 0.1");
    }
    min_abs_ = std::min(min_abs_, std::abs(factor));
    log_sum_ += std::log(factor);
  }

  Cplx value() const {
    if (log_sum_.real() > 690.0) {
      throw InstabilityError("factor recursion: product magnitude exceeds double range");
    }
    return std::exp(log_sum_);
  }

  double min_abs_factor() const { return min_abs_; }

 private:
  Cplx log_sum_{0.0, 0.0};
  double min_abs_ = 1e300;
};

void check_u(Cplx u) {
  if (!std::isfinite(u.real()) || !std::isfinite(u.imag())) {
    throw RegimeError("factor recursion: u must be finite");
  }
}

}  // namespace

BlockMomentOracle::BlockMomentOracle(const WindowStatistic& stat, double p, int m, int max_span)
    : max_span_(max_span) {
  if (max_span < 1 || max_span > 16) {
    throw RegimeError("BlockMomentOracle: max_span must lie in [1,16]");
  }
  if (m < stat.width - 1) {
    throw RegimeError("BlockMomentOracle: block length m must be >= width-1");
  }
  run_pmf_.reserve(static_cast<std::size_t>(max_span));
  for (int l = 1; l <= max_span; ++l) {
    // l consecutive blocks concatenate into the statistic over l*m terms.
    run_pmf_.push_back(pmf_dp(stat, BernoulliChainSpec{static_cast<std::int64_t>(l) * m, p}));
  }
}

Cplx BlockMomentOracle::run_mgf(int l, Cplx u) const {
  if (l < 1 || l > max_span_) throw RegimeError("run_mgf: span out of range");
  return cf_eval(run_pmf_[static_cast<std::size_t>(l - 1)], u);
}

Cplx BlockMomentOracle::centered_moment(int l, Cplx u) const {
  if (l < 1 || l > max_span_) throw RegimeError("centered_moment: span out of range");
  // Inclusion-exclusion over subsets T of {1..l}; E prod_{i in T} e^{uX_i}
  // factors over maximal runs of consecutive indices (gaps make the runs
  // independent under 1-dependence).
  Cplx sum{0.0, 0.0};
  const unsigned total = 1u << l;
  for (unsigned mask = 0; mask < total; ++mask) {
    Cplx prod{1.0, 0.0};
    int run = 0;
    for (int i = 0; i < l; ++i) {
      if (mask & (1u << i)) {
        ++run;
      } else if (run > 0) {
        prod *= run_mgf(run, u);
        run = 0;
      }
    }
    if (run > 0) prod *= run_mgf(run, u);
    const int missing = l - std::popcount(mask);
    sum += ((missing & 1) ? -prod : prod);
  }
  return sum;
}

double BlockMomentOracle::abs_y_squared(Cplx u) const {
  const LatticePMF& pmf = run_pmf_[0];
  double acc = 0.0;
  for (std::int64_t i = 0; i < pmf.size(); ++i) {
    const LogReal& mass = pmf.masses()[static_cast<std::size_t>(i)];
    if (mass.is_zero()) continue;
    const std::int64_t x = pmf.min_support() + i;
    const Cplx y = std::exp(u * static_cast<double>(x)) - 1.0;
    acc += mass.linear() * std::norm(y);
  }
  return acc;
}

HatESeries heinrich_hat_e(const BlockMomentOracle& oracle, Cplx u, int span) {
  if (span < 1 || span > oracle.max_span()) {
    throw RegimeError("heinrich_hat_e: span out of oracle range");
  }
  check_u(u);
  std::vector<Cplx> mu(static_cast<std::size_t>(span));
  for (int l = 1; l <= span; ++l) mu[static_cast<std::size_t>(l - 1)] = oracle.centered_moment(l, u);

  HatESeries out;
  out.hat_e.resize(static_cast<std::size_t>(span));
  out.bound.resize(static_cast<std::size_t>(span));
  const double ey2 = oracle.abs_y_squared(u);
  for (int l = 1; l <= span; ++l) {
    Cplx v = mu[static_cast<std::size_t>(l - 1)];
    for (int j = 1; j < l; ++j) {
      v -= out.hat_e[static_cast<std::size_t>(j - 1)] * mu[static_cast<std::size_t>(l - j - 1)];
    }
    out.hat_e[static_cast<std::size_t>(l - 1)] = v;
    const double b = (l == 1) ? std::sqrt(ey2)
                              : std::ldexp(std::pow(ey2, 0.5 * l), l - 1);
    out.bound[static_cast<std::size_t>(l - 1)] = b;
    const double mag = std::abs(v);
    if (b > 0.0) {
      out.max_bound_ratio = std::max(out.max_bound_ratio, mag / b);
    } else if (mag > 1e-14) {
      out.max_bound_ratio = std::numeric_limits<double>::infinity();
    }
  }
  return out;
}

HeinrichResult heinrich_cf_generic(const BlockMomentOracle& oracle, std::int64_t n_blocks, Cplx u,
                                   int depth, double* lemma2_worst) {
  if (depth < 2 || depth > 8) throw RegimeError("heinrich_cf_generic: depth must lie in [2,8]");
  if (n_blocks < 1) throw RegimeError("heinrich_cf_generic: need n_blocks >= 1");
  check_u(u);
  const HatESeries hats = heinrich_hat_e(oracle, u, depth);
  if (lemma2_worst) *lemma2_worst = std::max(*lemma2_worst, hats.max_bound_ratio);
  const Cplx base = 1.0 + hats.hat_e[0];  // 1 + mu_1 = E e^{uX_1}

  // phi_k = 1 + mu_1 + sum_{span=2}^{min(k,depth)} hat_e_span /
  //         (phi_{k-span+1} ... phi_{k-1}); only the last depth-1 factors
  //         are ever referenced.
  std::vector<Cplx> recent;  // ring buffer, most recent last
  recent.reserve(static_cast<std::size_t>(depth - 1));
  ProductAccumulator prod;
  for (std::int64_t k = 1; k <= n_blocks; ++k) {
    Cplx phi = base;
    const int top = static_cast<int>(std::min<std::int64_t>(k, depth));
    Cplx denom{1.0, 0.0};
    for (int span = 2; span <= top; ++span) {
      // denom for this span is phi_{k-span+1} ... phi_{k-1}.
      denom *= recent[recent.size() - static_cast<std::size_t>(span - 1)];
      phi += hats.hat_e[static_cast<std::size_t>(span - 1)] / denom;
    }
    prod.multiply(phi);
    if (recent.size() == static_cast<std::size_t>(depth - 1)) {
      recent.erase(recent.begin());
    }
    if (depth > 1) recent.push_back(phi);
  }

  HeinrichResult out;
  out.value = prod.value();
  out.truncation_magnitude = std::abs(hats.hat_e[static_cast<std::size_t>(depth - 1)]);
  out.min_abs_factor = prod.min_abs_factor();
  return out;
}

HeinrichResult heinrich_cf_2runs(std::int64_t n_terms, double p, Cplx u) {
  if (n_terms < 1) throw RegimeError("heinrich_cf_2runs: need n_terms >= 1");
  if (!(p > 0.0 && p < 1.0)) throw RegimeError("heinrich_cf_2runs: p must lie in (0,1)");
  check_u(u);
  const Cplx c = std::exp(u) - 1.0;
  const Cplx f1 = 1.0 + p * p * c;
  const Cplx step = c * p * (1.0 - p);  // ratio between consecutive numerators

  std::vector<Cplx> f;
  f.reserve(static_cast<std::size_t>(std::min<std::int64_t>(n_terms, 1 << 20)));
  ProductAccumulator prod;
  for (std::int64_t k = 1; k <= n_terms; ++k) {
    Cplx fk = f1;
    Cplx num = c * c * p * p * p * (1.0 - p);  // d = 1 numerator
    Cplx denom{1.0, 0.0};
    for (std::int64_t d = 1; d <= k - 1; ++d) {
      denom *= f[static_cast<std::size_t>(k - 1 - d)];
      const Cplx term = num / denom;
      fk += term;
      if (std::abs(term) <= 1e-18 * std::abs(fk)) break;
      num *= step;
    }
    prod.multiply(fk);
    f.push_back(fk);
  }

  HeinrichResult out;
  out.value = prod.value();
  out.truncation_magnitude = 0.0;  // recursion carries every span
  out.min_abs_factor = prod.min_abs_factor();
  return out;
}

HeinrichResult heinrich_cf_n11(std::int64_t n_terms, double p, Cplx u, N11Denom variant) {
  if (n_terms < 1) throw RegimeError("heinrich_cf_n11: need n_terms >= 1");
  if (!(p > 0.0 && p < 1.0)) throw RegimeError("heinrich_cf_n11: p must lie in (0,1)");
  check_u(u);
  const double alpha = p * (1.0 - p);
  const Cplx c = std::exp(u) - 1.0;
  const Cplx g1 = 1.0 + alpha * c;
  const Cplx step = -alpha * c;

  std::vector<Cplx> g;
  g.reserve(static_cast<std::size_t>(std::min<std::int64_t>(n_terms, 1 << 20)));
  ProductAccumulator prod;
  for (std::int64_t k = 1; k <= n_terms; ++k) {
    // Inner sum over the factors already fixed: S = sum_d num_d / (g_{k-d}
    // ... g_{k-1}).  up_to_prev closes the factor as g_k = g_1 + S;
    // up_to_self divides once more by g_k itself, solved by iteration.
    Cplx s{0.0, 0.0};
    Cplx num = -alpha * alpha * c * c;  // d = 1 numerator
    Cplx denom{1.0, 0.0};
    for (std::int64_t d = 1; d <= k - 1; ++d) {
      denom *= g[static_cast<std::size_t>(k - 1 - d)];
      const Cplx term = num / denom;
      s += term;
      if (std::abs(term) <= 1e-18 * std::max(std::abs(g1 + s), 1e-30)) break;
      num *= step;
    }

    Cplx gk;
    if (variant == N11Denom::up_to_prev) {
      gk = g1 + s;
    } else {
      gk = g1;
      bool converged = false;
      for (int it = 0; it < 50; ++it) {
        if (std::abs(gk) < 1e-12) throw InstabilityError("heinrich_cf_n11: fixed point hit zero");
        const Cplx next = g1 + s / gk;
        if (std::abs(next - gk) <= 1e-15 * std::abs(next)) {
          gk = next;
          converged = true;
          break;
        }
        gk = next;
      }
      if (!converged) {
        throw ConvergenceError("heinrich_cf_n11: fixed point failed to settle in 50 iterations",
                               std::abs(s), 50);
      }
    }
    prod.multiply(gk);
    g.push_back(gk);
  }

  HeinrichResult out;
  out.value = prod.value();
  out.truncation_magnitude = 0.0;
  out.min_abs_factor = prod.min_abs_factor();
  return out;
}

}  // namespace ldev
