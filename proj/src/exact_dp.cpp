#include <algorithm>
#include <cmath>
#include <cstring>

#include "ldev/errors.hpp"
#include "ldev/exact_dist.hpp"
#include "ldev/kernels.hpp"

namespace ldev {

namespace {

void validate_chain(const WindowStatistic& stat, const BernoulliChainSpec& chain) {
  if (stat.width < 1 || stat.payoff.size() != (std::size_t(1) << stat.width)) {
    throw RegimeError("pmf: malformed window statistic");
  }
  if (chain.n_terms < 1) throw RegimeError("pmf: n_terms must be >= 1");
  if (!(chain.p >= 0.0 && chain.p <= 1.0)) throw RegimeError("pmf: p must lie in [0,1]");
}

}  // namespace

LatticePMF pmf_dp(const WindowStatistic& stat, const BernoulliChainSpec& chain,
                  std::optional<std::int64_t> cap, const ExactOptions& opt) {
  validate_chain(stat, chain);
  if (cap && *cap < 1) throw RegimeError("pmf_dp: cap must be >= 1");

  const int w = stat.width;
  const int S = stat.state_count();
  const std::int64_t maxf = stat.max_payoff();
  const double p = chain.p, q = 1.0 - chain.p;
  const std::int64_t n = chain.n_terms;

  const std::int64_t full_top = n * maxf;
  const std::int64_t top = cap ? std::min(full_top, *cap) : full_top;
  const std::int64_t klen = top + 1;

  const std::int64_t bytes = 2 * static_cast<std::int64_t>(S) * klen * 8;
  if (bytes > opt.memory_limit_bytes) {
    throw MemoryLimitError("pmf_dp: estimated " + std::to_string(bytes) +
                           " bytes exceeds memory limit");
  }

  std::vector<double> cur(static_cast<std::size_t>(S) * klen, 0.0);
  std::vector<double> nxt(static_cast<std::size_t>(S) * klen, 0.0);
  std::vector<double> ovf(static_cast<std::size_t>(S), 0.0);
  std::vector<double> novf(static_cast<std::size_t>(S), 0.0);
  auto row = [klen](std::vector<double>& buf, int s) { return buf.data() + s * klen; };

  // Initial distribution of the first w-1 chain bits.
  for (int s = 0; s < S; ++s) {
    double prob = 1.0;
    for (int i = 0; i < w - 1; ++i) prob *= ((s >> i) & 1) ? p : q;
    row(cur, s)[0] = prob;
  }

  const std::uint32_t smask = static_cast<std::uint32_t>(S - 1);
  for (std::int64_t j = 1; j <= n; ++j) {
    const std::int64_t in_len = std::min<std::int64_t>(klen, (j - 1) * maxf + 1);
    const std::int64_t out_len = std::min<std::int64_t>(klen, j * maxf + 1);
    for (int s = 0; s < S; ++s) {
      std::memset(row(nxt, s), 0, static_cast<std::size_t>(out_len) * sizeof(double));
      novf[static_cast<std::size_t>(s)] = 0.0;
    }
    for (int s = 0; s < S; ++s) {
      const double* src = row(cur, s);
      const double so = ovf[static_cast<std::size_t>(s)];
      for (int b = 0; b < 2; ++b) {
        const double pb = b ? p : q;
        const std::uint32_t win = (static_cast<std::uint32_t>(s) << 1) | static_cast<std::uint32_t>(b);
        const std::int64_t f = stat.payoff[win];
        const int ns = static_cast<int>(win & smask);
        const std::int64_t keep = std::clamp<std::int64_t>(klen - f, 0, in_len);
        if (keep > 0) kernels::axpy(pb, src, row(nxt, ns) + f, static_cast<std::size_t>(keep));
        double spill = 0.0;
        for (std::int64_t c = keep; c < in_len; ++c) spill += src[c];
        novf[static_cast<std::size_t>(ns)] += pb * (spill + so);
      }
    }
    cur.swap(nxt);
    ovf.swap(novf);
  }

  std::vector<LogReal> masses(static_cast<std::size_t>(klen));
  for (std::int64_t c = 0; c < klen; ++c) {
    double m = 0.0;
    for (int s = 0; s < S; ++s) m += row(cur, s)[c];
    masses[static_cast<std::size_t>(c)] = LogReal::from_linear(m);
  }
  double ovf_total = 0.0;
  for (int s = 0; s < S; ++s) ovf_total += ovf[static_cast<std::size_t>(s)];
  const bool truncated = cap.has_value() && top < full_top;
  return LatticePMF(0, std::move(masses), truncated,
                    truncated ? LogReal::from_linear(ovf_total) : LogReal::zero());
}

}  // namespace ldev
