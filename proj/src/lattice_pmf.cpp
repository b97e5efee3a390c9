#include "ldev/lattice_pmf.hpp"

#include <cmath>
#include <ostream>

#include "ldev/errors.hpp"
#include "ldev/io_util.hpp"

namespace ldev {

LatticePMF::LatticePMF(std::int64_t offset, std::vector<LogReal> masses, bool truncated,
                       LogReal truncation_bound)
    : offset_(offset), masses_(std::move(masses)), truncated_(truncated),
      truncation_bound_(truncation_bound) {
  if (masses_.empty()) throw RegimeError("LatticePMF: empty mass vector");
}

LogReal LatticePMF::mass(std::int64_t x) const {
  std::int64_t i = x - offset_;
  if (i < 0 || i >= size()) return LogReal::zero();
  return masses_[static_cast<std::size_t>(i)];
}

LogReal LatticePMF::total_mass() const { return log_sum_exp(masses_); }

LogReal LatticePMF::tail_from(std::int64_t x) const {
  std::int64_t i = x - offset_;
  if (i < 0) i = 0;
  LogReal t = LogReal::zero();
  if (i < size()) {
    std::span<const LogReal> upper(masses_.data() + i, static_cast<std::size_t>(size() - i));
    t = log_sum_exp(upper);
  }
  if (truncated_) t += truncation_bound_;
  return t;
}

void LatticePMF::write_csv(std::ostream& os) const {
  os << "# ldev-csv schema=1 kind=pmf\n";
  os << "# offset=" << offset_ << " size=" << size() << " truncated=" << (truncated_ ? 1 : 0)
     << " truncation_log_bound=" << fmt17(truncation_bound_.log_value()) << "\n";
  os << "x,log_prob,prob\n";
  for (std::int64_t i = 0; i < size(); ++i) {
    const LogReal& m = masses_[static_cast<std::size_t>(i)];
    os << (offset_ + i) << "," << fmt17(m.log_value()) << "," << fmt17(m.linear()) << "\n";
  }
}

void LatticePMF::write_json(std::ostream& os) const {
  os << "{\"schema\":1,\"kind\":\"pmf\",\"offset\":" << offset_ << ",\"truncated\":"
     << (truncated_ ? "true" : "false")
     << ",\"truncation_log_bound\":" << fmt17(truncation_bound_.log_value()) << ",\"log_masses\":[";
  for (std::int64_t i = 0; i < size(); ++i) {
    if (i) os << ",";
    os << fmt17(masses_[static_cast<std::size_t>(i)].log_value());
  }
  os << "],\"masses\":[";
  for (std::int64_t i = 0; i < size(); ++i) {
    if (i) os << ",";
    os << fmt17(masses_[static_cast<std::size_t>(i)].linear());
  }
  os << "]}\n";
}

Cplx cf_eval(const LatticePMF& pmf, Cplx u) {
  // E e^{uX} = sum_x m_x e^{ux}; shift by the max of log m_x + Re(u) x.
  const double re = u.real(), im = u.imag();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < pmf.size(); ++i) {
    const LogReal& m = pmf.masses()[static_cast<std::size_t>(i)];
    if (m.is_zero()) continue;
    hi = std::fmax(hi, m.log_value() + re * static_cast<double>(pmf.offset() + i));
  }
  if (std::isinf(hi)) return Cplx(0.0, 0.0);
  Cplx acc(0.0, 0.0);
  for (std::int64_t i = 0; i < pmf.size(); ++i) {
    const LogReal& m = pmf.masses()[static_cast<std::size_t>(i)];
    if (m.is_zero()) continue;
    double x = static_cast<double>(pmf.offset() + i);
    double w = std::exp(m.log_value() + re * x - hi);
    acc += w * expi(im * x);
  }
  if (hi > 690.0) throw InstabilityError("cf_eval: tilted normalizer overflows double range");
  return std::exp(hi) * acc;
}

Moments pmf_moments(const LatticePMF& pmf) {
  if (pmf.truncated() && pmf.truncation_bound().log_value() > std::log(1e-12)) {
    throw RegimeError("pmf_moments: truncation bound too large for moment computation");
  }
  // Masses are <= 1, so plain exp is safe; Kahan summation keeps the
  // accumulation error at rounding level for supports up to ~1e7.
  double mean = 0.0, mc = 0.0, m2 = 0.0, m2c = 0.0, tot = 0.0, tc = 0.0;
  for (std::int64_t i = 0; i < pmf.size(); ++i) {
    const LogReal& m = pmf.masses()[static_cast<std::size_t>(i)];
    if (m.is_zero()) continue;
    double w = m.linear();
    double x = static_cast<double>(pmf.offset() + i);
    auto kahan = [](double& s, double& comp, double v) {
      double t = s + v;
      if (std::fabs(s) >= std::fabs(v)) {
        comp += (s - t) + v;
      } else {
        comp += (v - t) + s;
      }
      s = t;
    };
    kahan(tot, tc, w);
    kahan(mean, mc, w * x);
    kahan(m2, m2c, w * x * x);
  }
  tot += tc;
  mean += mc;
  m2 += m2c;
  if (tot <= 0.0) throw RegimeError("pmf_moments: zero total mass");
  Moments out;
  out.mean = mean / tot;
  out.variance = m2 / tot - out.mean * out.mean;
  return out;
}

}  // namespace ldev
