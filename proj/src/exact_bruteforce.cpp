#include <bit>

#include "ldev/errors.hpp"
#include "ldev/exact_dist.hpp"

namespace ldev {

LatticePMF RationalPMF::to_lattice() const {
  std::vector<LogReal> out(masses.size());
  for (std::size_t i = 0; i < masses.size(); ++i) {
    out[i] = LogReal::from_log(masses[i].is_zero()
                                   ? -std::numeric_limits<double>::infinity()
                                   : masses[i].log_value());
  }
  return LatticePMF(0, std::move(out));
}

BruteForceTable bruteforce_enumerate(const WindowStatistic& stat, std::int64_t n_terms) {
  if (n_terms < 1) throw RegimeError("bruteforce: n_terms must be >= 1");
  const int w = stat.width;
  const std::int64_t bits = n_terms + w - 1;
  if (bits > 24) throw RegimeError("bruteforce: chain longer than 24 bits");

  // LSB-first payoff lookup: chain bit j of v is (v >> j) & 1, so the window
  // starting at bit j reads LSB-first; reverse to the MSB-first payoff index.
  const std::uint32_t wmask = (1u << w) - 1u;
  std::vector<std::uint32_t> lut(std::size_t(1) << w);
  for (std::uint32_t q = 0; q < lut.size(); ++q) {
    std::uint32_t rev = 0;
    for (int i = 0; i < w; ++i) rev |= ((q >> i) & 1u) << (w - 1 - i);
    lut[q] = stat.payoff[rev];
  }

  BruteForceTable table;
  table.n_terms = n_terms;
  table.chain_bits = bits;
  const std::int64_t smax = n_terms * stat.max_payoff();
  table.count.assign(static_cast<std::size_t>(smax) + 1,
                     std::vector<std::uint64_t>(static_cast<std::size_t>(bits) + 1, 0));

  const std::uint64_t total = 1ULL << bits;
  for (std::uint64_t v = 0; v < total; ++v) {
    std::uint64_t s = 0;
    for (std::int64_t j = 0; j < n_terms; ++j) {
      s += lut[static_cast<std::uint32_t>(v >> j) & wmask];
    }
    ++table.count[static_cast<std::size_t>(s)][static_cast<std::size_t>(std::popcount(v))];
  }
  return table;
}

RationalPMF pmf_from_table(const BruteForceTable& table, const Rational& p) {
  const auto bits = static_cast<std::size_t>(table.chain_bits);
  const Rational one(1);
  const Rational q = one - p;
  std::vector<Rational> pw_p(bits + 1), pw_q(bits + 1);
  pw_p[0] = one;
  pw_q[0] = one;
  for (std::size_t k = 1; k <= bits; ++k) {
    pw_p[k] = pw_p[k - 1] * p;
    pw_q[k] = pw_q[k - 1] * q;
  }
  RationalPMF out;
  out.masses.assign(table.count.size(), Rational());
  for (std::size_t s = 0; s < table.count.size(); ++s) {
    Rational acc;
    for (std::size_t k = 0; k <= bits; ++k) {
      std::uint64_t c = table.count[s][k];
      if (c) acc += Rational(static_cast<std::int64_t>(c)) * pw_p[k] * pw_q[bits - k];
    }
    out.masses[s] = acc;
  }
  return out;
}

RationalPMF pmf_bruteforce(const WindowStatistic& stat, const BernoulliChainSpec& chain) {
  if (!(chain.p >= 0.0 && chain.p <= 1.0)) throw RegimeError("bruteforce: p must lie in [0,1]");
  BruteForceTable table = bruteforce_enumerate(stat, chain.n_terms);
  return pmf_from_table(table, Rational::from_double(chain.p));
}

}  // namespace ldev
