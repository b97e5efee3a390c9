#include "ldev/moments.hpp"

#include <bit>
#include <cmath>
#include <ostream>

#include "ldev/errors.hpp"
#include "ldev/io_util.hpp"

namespace ldev {

GroupedStatistic group_blocks(const WindowStatistic& stat, int m) {
  if (m < 1) throw RegimeError("group_blocks: m must be >= 1");
  if (m < stat.width - 1) {
    throw RegimeError("group_blocks: need m >= width-1 for 1-dependent blocks");
  }
  return GroupedStatistic{stat, m};
}

WindowStatistic GroupedStatistic::block_stat() const {
  const WindowStatistic& b = base;
  const int bw = block_bits();
  const int w = b.width;
  const int mm = m;
  return WindowStatistic::from_fn(
      bw,
      [&b, w, mm](const std::vector<int>& bits) {
        std::uint32_t total = 0;
        for (int i = 0; i < mm; ++i) {
          std::uint32_t idx = 0;
          for (int j = 0; j < w; ++j) idx = (idx << 1) | static_cast<std::uint32_t>(bits[i + j]);
          total += b.payoff[idx];
        }
        return total;
      },
      b.name + "/block" + std::to_string(mm));
}

MomentSet block_moments(const WindowStatistic& stat, double p, int m) {
  group_blocks(stat, m);  // validate the pairing
  if (!(p >= 0.0 && p <= 1.0)) throw RegimeError("block_moments: p must lie in [0,1]");
  const int w = stat.width;
  const int jb = 2 * m + w - 1;
  if (jb > 30) throw RegimeError("block_moments: joint enumeration wider than 30 bits");

  // LSB-first payoff lookup (chain bit j of v is (v >> j) & 1).
  const std::uint32_t wmask = (1u << w) - 1u;
  std::vector<std::uint32_t> lut(std::size_t(1) << w);
  for (std::uint32_t q = 0; q < lut.size(); ++q) {
    std::uint32_t rev = 0;
    for (int i = 0; i < w; ++i) rev |= ((q >> i) & 1u) << (w - 1 - i);
    lut[q] = stat.payoff[rev];
  }

  std::vector<double> pw_p(static_cast<std::size_t>(jb) + 1, 1.0);
  std::vector<double> pw_q(static_cast<std::size_t>(jb) + 1, 1.0);
  for (int k = 1; k <= jb; ++k) {
    pw_p[static_cast<std::size_t>(k)] = pw_p[static_cast<std::size_t>(k - 1)] * p;
    pw_q[static_cast<std::size_t>(k)] = pw_q[static_cast<std::size_t>(k - 1)] * (1.0 - p);
  }

  MomentSet ms;
  const std::uint64_t total = 1ULL << jb;
  for (std::uint64_t v = 0; v < total; ++v) {
    std::uint32_t x1 = 0, x2 = 0;
    for (int i = 0; i < m; ++i) {
      x1 += lut[static_cast<std::uint32_t>(v >> i) & wmask];
      x2 += lut[static_cast<std::uint32_t>(v >> (m + i)) & wmask];
    }
    if (static_cast<int>(x1) > ms.c0) ms.c0 = static_cast<int>(x1);
    const int ones = std::popcount(v);
    const double prob = pw_p[static_cast<std::size_t>(ones)] * pw_q[static_cast<std::size_t>(jb - ones)];
    const double dx1 = static_cast<double>(x1);
    ms.nu1 += prob * dx1;
    ms.nu2 += prob * dx1 * (dx1 - 1.0);
    ms.ex1x2 += prob * dx1 * static_cast<double>(x2);
  }
  return ms;
}

double gamma_of(const MomentSet& ms) {
  const double worst = std::fmax(ms.nu1 * ms.nu1, std::fmax(ms.nu2, ms.ex1x2));
  return std::exp(1.5 * ms.c0) * worst;
}

double rel_dev_y(std::int64_t n_blocks, double nu1, double x) {
  const double mean = static_cast<double>(n_blocks) * nu1;
  if (!(mean > 0.0)) throw RegimeError("rel_dev_y: n*nu1 must be positive");
  return (x - mean) / mean;
}

ConditionThresholds ConditionThresholds::relaxed(double e5nu1, double ymax, double frac) {
  ConditionThresholds t;
  t.e5nu1_max = e5nu1;
  t.y_abs_max = ymax;
  t.pair_fraction = frac;
  t.mode_name = "relaxed";
  return t;
}

ConditionReport check_conditions(const MomentSet& ms, std::int64_t n_blocks, double x,
                                 const ConditionThresholds& th) {
  ConditionReport rep;
  rep.mode = th.mode_name;

  auto add = [&rep](const std::string& name, double lhs, double rhs) {
    ConditionClause c;
    c.name = name;
    c.lhs = lhs;
    c.rhs = rhs;
    c.pass = lhs <= rhs;
    c.margin = rhs - lhs;
    rep.clauses.push_back(c);
  };

  const double scale = std::exp(-1.5 * ms.c0) * th.pair_fraction;
  add("e5c0_nu1", std::exp(5.0 * ms.c0) * ms.nu1, th.e5nu1_max);
  add("rel_dev", std::fabs(rel_dev_y(n_blocks, ms.nu1, x)), th.y_abs_max);
  add("nu2_small", ms.nu2, ms.nu1 * scale);
  add("ex1x2_small", ms.ex1x2, ms.nu1 * scale);

  rep.all_pass = true;
  for (const auto& c : rep.clauses) rep.all_pass = rep.all_pass && c.pass;
  return rep;
}

void ConditionReport::write_json(std::ostream& os) const {
  os << "{\"mode\":\"" << json_escape(mode) << "\",\"all_pass\":" << (all_pass ? "true" : "false")
     << ",\"clauses\":[";
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const auto& c = clauses[i];
    if (i) os << ",";
    os << "{\"name\":\"" << json_escape(c.name) << "\",\"lhs\":" << fmt17(c.lhs)
       << ",\"rhs\":" << fmt17(c.rhs) << ",\"pass\":" << (c.pass ? "true" : "false")
       << ",\"margin\":" << fmt17(c.margin) << "}";
  }
  os << "]}\n";
}

}  // namespace ldev
