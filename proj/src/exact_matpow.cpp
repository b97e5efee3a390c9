#include <cmath>

#include "ldev/errors.hpp"
#include "ldev/exact_dist.hpp"
#include "ldev/trunc_poly.hpp"

namespace ldev {

namespace {

using Matrix = std::vector<std::vector<TruncPoly>>;  // [from][to]

Matrix mat_mul(const Matrix& a, const Matrix& b, std::int64_t cap) {
  const std::size_t s = a.size();
  Matrix c(s, std::vector<TruncPoly>(s));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t k = 0; k < s; ++k) {
      const TruncPoly& aik = a[i][k];
      if (aik.c.empty() && aik.ovf == 0.0) continue;
      for (std::size_t j = 0; j < s; ++j) {
        const TruncPoly& bkj = b[k][j];
        if (bkj.c.empty() && bkj.ovf == 0.0) continue;
        poly_mul_acc(aik, bkj, cap, c[i][j]);
      }
    }
  }
  return c;
}

std::vector<TruncPoly> vec_mul(const std::vector<TruncPoly>& v, const Matrix& m, std::int64_t cap) {
  const std::size_t s = v.size();
  std::vector<TruncPoly> out(s);
  for (std::size_t k = 0; k < s; ++k) {
    const TruncPoly& vk = v[k];
    if (vk.c.empty() && vk.ovf == 0.0) continue;
    for (std::size_t j = 0; j < s; ++j) {
      const TruncPoly& mkj = m[k][j];
      if (mkj.c.empty() && mkj.ovf == 0.0) continue;
      poly_mul_acc(vk, mkj, cap, out[j]);
    }
  }
  return out;
}

}  // namespace

LatticePMF pmf_matpow(const WindowStatistic& stat, const BernoulliChainSpec& chain,
                      std::int64_t cap, const ExactOptions& opt) {
  if (stat.width < 1 || stat.payoff.size() != (std::size_t(1) << stat.width)) {
    throw RegimeError("pmf_matpow: malformed window statistic");
  }
  if (chain.n_terms < 1) throw RegimeError("pmf_matpow: n_terms must be >= 1");
  if (!(chain.p >= 0.0 && chain.p <= 1.0)) throw RegimeError("pmf_matpow: p must lie in [0,1]");
  if (cap < 1) throw RegimeError("pmf_matpow: cap must be >= 1");

  const int w = stat.width;
  const int S = stat.state_count();
  const std::int64_t maxf = stat.max_payoff();
  const std::int64_t full_top = chain.n_terms * maxf;
  const std::int64_t top = std::min(full_top, cap);
  const double p = chain.p, q = 1.0 - chain.p;

  // Three matrices live at once during a squaring step.
  const std::int64_t bytes = 3 * static_cast<std::int64_t>(S) * S * (top + 1) * 8;
  if (bytes > opt.memory_limit_bytes) {
    throw MemoryLimitError("pmf_matpow: estimated " + std::to_string(bytes) +
                           " bytes exceeds memory limit");
  }

  const std::uint32_t smask = static_cast<std::uint32_t>(S - 1);
  Matrix base(static_cast<std::size_t>(S), std::vector<TruncPoly>(static_cast<std::size_t>(S)));
  for (int s = 0; s < S; ++s) {
    for (int b = 0; b < 2; ++b) {
      const double pb = b ? p : q;
      const std::uint32_t win = (static_cast<std::uint32_t>(s) << 1) | static_cast<std::uint32_t>(b);
      const std::int64_t f = stat.payoff[win];
      const int ns = static_cast<int>(win & smask);
      TruncPoly& cell = base[static_cast<std::size_t>(s)][static_cast<std::size_t>(ns)];
      if (f <= top) {
        if (static_cast<std::int64_t>(cell.c.size()) < f + 1) cell.c.resize(static_cast<std::size_t>(f) + 1, 0.0);
        cell.c[static_cast<std::size_t>(f)] += pb;
      } else {
        cell.ovf += pb;
      }
    }
  }

  // Initial state distribution as a degree-0 row vector.
  std::vector<TruncPoly> acc(static_cast<std::size_t>(S));
  for (int s = 0; s < S; ++s) {
    double prob = 1.0;
    for (int i = 0; i < w - 1; ++i) prob *= ((s >> i) & 1) ? p : q;
    acc[static_cast<std::size_t>(s)].c.assign(1, prob);
  }

  std::int64_t e = chain.n_terms;
  Matrix sq = base;
  while (e > 0) {
    if (e & 1) acc = vec_mul(acc, sq, top);
    e >>= 1;
    if (e > 0) sq = mat_mul(sq, sq, top);
  }

  std::vector<LogReal> masses(static_cast<std::size_t>(top) + 1);
  double ovf_total = 0.0;
  for (std::int64_t c = 0; c <= top; ++c) {
    double m = 0.0;
    for (int s = 0; s < S; ++s) {
      const auto& poly = acc[static_cast<std::size_t>(s)];
      if (c < static_cast<std::int64_t>(poly.c.size())) m += poly.c[static_cast<std::size_t>(c)];
    }
    masses[static_cast<std::size_t>(c)] = LogReal::from_linear(m);
  }
  for (int s = 0; s < S; ++s) ovf_total += acc[static_cast<std::size_t>(s)].ovf;
  const bool truncated = top < full_top;
  return LatticePMF(0, std::move(masses), truncated,
                    truncated ? LogReal::from_linear(ovf_total) : LogReal::zero());
}

}  // namespace ldev
