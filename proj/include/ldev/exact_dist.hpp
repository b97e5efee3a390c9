#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ldev/lattice_pmf.hpp"
#include "ldev/rational.hpp"
#include "ldev/window_stat.hpp"

namespace ldev {

struct ExactOptions {
  // Refuse computations whose working set would exceed this many bytes.
  std::int64_t memory_limit_bytes = 4LL << 30;
};

// Transfer-matrix dynamic program over the chain, O(n_terms * states * K).
// cap = nullopt keeps the full support [0, n_terms * max_payoff]; otherwise
// masses above cap are lumped exactly into the truncation cell.
LatticePMF pmf_dp(const WindowStatistic& stat, const BernoulliChainSpec& chain,
                  std::optional<std::int64_t> cap = std::nullopt, const ExactOptions& opt = {});

// Count-truncated polynomial transfer matrix raised to the n_terms-th power
// by repeated squaring, O(states^3 * K^2 * log n_terms).  Requires a cap.
LatticePMF pmf_matpow(const WindowStatistic& stat, const BernoulliChainSpec& chain,
                      std::int64_t cap, const ExactOptions& opt = {});

// Exact rational PMF: masses[s] = P(S = s), summing to exactly 1.
struct RationalPMF {
  std::vector<Rational> masses;
  LatticePMF to_lattice() const;
};

// Enumeration counts for one (statistic, n_terms) pair: table[s][k] = number
// of chains with payoff total s and exactly k success bits.  One enumeration
// serves every p.
struct BruteForceTable {
  std::int64_t n_terms = 0;
  std::int64_t chain_bits = 0;
  std::vector<std::vector<std::uint64_t>> count;  // [payoff][ones]
};

BruteForceTable bruteforce_enumerate(const WindowStatistic& stat, std::int64_t n_terms);

RationalPMF pmf_from_table(const BruteForceTable& table, const Rational& p);

// Brute-force oracle over all 2^{chain bits} strings; chain bits <= 24.
// The double p is taken at its exact rational value.
RationalPMF pmf_bruteforce(const WindowStatistic& stat, const BernoulliChainSpec& chain);

}  // namespace ldev
