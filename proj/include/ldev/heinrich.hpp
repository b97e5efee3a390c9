#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ldev/lattice_pmf.hpp"
#include "ldev/moments.hpp"
#include "ldev/quadrature.hpp"

namespace ldev {

// Joint moments of the stationary 1-dependent block sequence X_1, X_2, ...
// needed by the product factorization of the CF.  Contiguous runs of blocks
// concatenate into one longer chain segment, so E prod e^{u X_i} over a run
// of length l is the MGF of the l-block sum; non-adjacent runs are
// independent and factorize.  Everything reduces to the exact PMFs of
// 1..max_span consecutive blocks, computed once.
class BlockMomentOracle {
 public:
  BlockMomentOracle(const WindowStatistic& stat, double p, int m, int max_span);

  int max_span() const { return max_span_; }

  // E e^{u (X_1 + ... + X_l)}, 1 <= l <= max_span.
  Cplx run_mgf(int l, Cplx u) const;

  // mu_l = E[(e^{uX_1}-1) ... (e^{uX_l}-1)] by inclusion-exclusion over the
  // 2^l subsets, factorized over maximal runs.
  Cplx centered_moment(int l, Cplx u) const;

  // E|e^{uX_1}-1|^2, the factor in the bracket magnitude bound.
  double abs_y_squared(Cplx u) const;

 private:
  int max_span_;
  std::vector<LatticePMF> run_pmf_;  // run_pmf_[l-1] = law of X_1+...+X_l
};

// The bracket sequence E-hat_l at a fixed u, via
//   E-hat_1 = mu_1,  E-hat_l = mu_l - sum_{j=1}^{l-1} E-hat_j mu_{l-j},
// together with the magnitude bound 2^{l-1} (E|e^{uX}-1|^2)^{l/2} for l >= 2
// (|E Y| <= (E|Y|^2)^{1/2} for l = 1).
struct HatESeries {
  std::vector<Cplx> hat_e;          // index l-1
  std::vector<double> bound;        // same indexing
  double max_bound_ratio = 0.0;     // max_l |hat_e|/bound (<= 1 if the bound holds)
};

HatESeries heinrich_hat_e(const BlockMomentOracle& oracle, Cplx u, int span);

struct HeinrichResult {
  Cplx value;                        // product of the n factors
  double truncation_magnitude = 0.0; // |E-hat at the deepest retained span|
  double min_abs_factor = 0.0;       // instability diagnostic
};

// Generic product factorization phi_1 ... phi_n with spans truncated at
// depth (2 <= depth <= 8).  Aborts with InstabilityError if any |phi_k|
// drops below 0.1.  If lemma2 is non-null, accumulates the worst
// |E-hat|/bound ratio seen.
HeinrichResult heinrich_cf_generic(const BlockMomentOracle& oracle, std::int64_t n_blocks, Cplx u,
                                   int depth, double* lemma2_worst = nullptr);

// Explicit factor recursion for the adjacent-pairs statistic:
//   f_1 = 1 + p^2 (e^u - 1),
//   f_k = f_1 + sum_{j=1}^{k-1} (e^u-1)^{k-j+1} p^{k-j+2} (1-p)^{k-j}
//                 / (f_j ... f_{k-1}).
// Exact (no span truncation); inner terms stop once below 1e-18 relative.
HeinrichResult heinrich_cf_2runs(std::int64_t n_terms, double p, Cplx u);

// Explicit factor recursion for the success-failure statistic with
// alpha = p(1-p):
//   g_1 = 1 + alpha (e^u - 1),
//   g_k = g_1 + sum_{j=1}^{k-1} (-1)^{k-j} alpha^{k-j+1} (e^u-1)^{k-j+1} / D,
// where the denominator D is g_j ... g_{k-1} (up_to_prev, the default) or
// g_j ... g_k (up_to_self, which makes the recursion implicit and is solved
// by a <=50-iteration fixed point).  The exact-CF equality test selects
// up_to_prev; both are kept so the test can adjudicate.
enum class N11Denom { up_to_prev, up_to_self };

HeinrichResult heinrich_cf_n11(std::int64_t n_terms, double p, Cplx u,
                               N11Denom variant = N11Denom::up_to_prev);

}  // namespace ldev
