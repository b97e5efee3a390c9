#include "ldev/approx_family.hpp"

#include <cmath>
#include <ostream>

#include "ldev/errors.hpp"
#include "ldev/io_util.hpp"

namespace ldev {

NBParams nb_params(std::int64_t n, double p) {
  if (n < 1) throw RegimeError("nb_params: n must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw RegimeError("nb_params: p must lie in (0,1)");
  const double nd = static_cast<double>(n);
  const double d = p * p * p * (nd * (2.0 - 3.0 * p) - 2.0 * (1.0 - p));
  if (!(d > 0.0)) throw RegimeError("nb_params: dispersion correction D <= 0 (p too large for n)");
  const double denom = nd * p * p + d;
  NBParams out;
  out.qbar = nd * p * p / denom;
  out.pbar = d / denom;
  out.r = nd * nd * std::pow(p, 4) / d;
  if (!(out.r > 0.0) || !(out.pbar > 0.0 && out.pbar < 1.0)) {
    throw RegimeError("nb_params: parameters out of range");
  }
  return out;
}

BIParams bi_params(std::int64_t n, double p) {
  if (n < 1) throw RegimeError("bi_params: n must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw RegimeError("bi_params: p must lie in (0,1)");
  BIParams out;
  out.alpha = p * (1.0 - p);
  const double nd = static_cast<double>(n);
  out.ntilde = nd * nd / (3.0 * nd - 2.0);
  out.trials = static_cast<std::int64_t>(std::floor(out.ntilde));
  if (out.trials < 1) throw RegimeError("bi_params: floor(Ntilde) < 1");
  out.mean_exact = nd * out.alpha;
  out.ptilde = out.mean_exact / static_cast<double>(out.trials);
  if (!(out.ptilde > 0.0 && out.ptilde < 1.0)) {
    throw RegimeError("bi_params: ptilde outside (0,1); regime too dense for the binomial family");
  }
  return out;
}

double lambda_star(double nu1, double y) {
  if (!(nu1 > 0.0 && nu1 < 1.0)) throw RegimeError("lambda_star: nu1 must lie in (0,1)");
  const double v = nu1 * (1.0 - nu1 * y / (1.0 - nu1));
  if (!(v > 0.0)) throw RegimeError("lambda_star: non-positive tail parameter");
  return v;
}

ApproxFamily ApproxFamily::poisson(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw RegimeError("ApproxFamily: Poisson parameter must be positive and finite");
  }
  ApproxFamily f;
  f.kind_ = Kind::poisson;
  f.lambda_ = lambda;
  return f;
}

ApproxFamily ApproxFamily::neg_binomial(double r, double qbar) {
  if (!(r > 0.0) || !(qbar > 0.0 && qbar < 1.0)) {
    throw RegimeError("ApproxFamily: negative binomial needs r > 0, qbar in (0,1)");
  }
  ApproxFamily f;
  f.kind_ = Kind::neg_binomial;
  f.r_ = r;
  f.qbar_ = qbar;
  return f;
}

ApproxFamily ApproxFamily::binomial(std::int64_t trials, double ptilde) {
  if (trials < 1 || !(ptilde > 0.0 && ptilde < 1.0)) {
    throw RegimeError("ApproxFamily: binomial needs trials >= 1, ptilde in (0,1)");
  }
  ApproxFamily f;
  f.kind_ = Kind::binomial;
  f.trials_ = trials;
  f.ptilde_ = ptilde;
  return f;
}

ApproxFamily ApproxFamily::binomial(const BIParams& bp) {
  ApproxFamily f = binomial(bp.trials, bp.ptilde);
  f.mean_exact_ = bp.mean_exact;
  f.has_mean_exact_ = true;
  return f;
}

bool ApproxFamily::in_support(std::int64_t k) const {
  if (k < 0) return false;
  if (kind_ == Kind::binomial && k > trials_) return false;
  return true;
}

LogReal ApproxFamily::pmf(std::int64_t k) const {
  if (!in_support(k)) return LogReal::zero();
  const double kd = static_cast<double>(k);
  double lp = 0.0;
  switch (kind_) {
    case Kind::poisson:
      lp = kd * std::log(lambda_) - lambda_ - std::lgamma(kd + 1.0);
      break;
    case Kind::neg_binomial:
      lp = std::lgamma(r_ + kd) - std::lgamma(kd + 1.0) - std::lgamma(r_) + r_ * std::log(qbar_) +
           kd * std::log1p(-qbar_);
      break;
    case Kind::binomial: {
      const double nd = static_cast<double>(trials_);
      lp = std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) +
           kd * std::log(ptilde_) + (nd - kd) * std::log1p(-ptilde_);
      break;
    }
  }
  return LogReal::from_log(lp);
}

LogReal ApproxFamily::tail(std::int64_t x) const {
  if (x <= 0) return LogReal::one();  // support is a subset of {0,1,...}
  if (kind_ == Kind::binomial && x > trials_) return LogReal::zero();

  // Sum upward from x relative to the first term, with a certified geometric
  // cutoff once the term ratio falls below 1.  The running rescale keeps the
  // accumulator in double range even when the mode lies far above x.
  const double lp0 = pmf(x).log_value();
  if (std::isinf(lp0)) return LogReal::zero();
  double shift = lp0;
  double acc = 1.0;
  double term = 1.0;
  std::int64_t k = x;
  const double rel_tol = 1e-18;
  while (true) {
    double ratio;
    const double kd = static_cast<double>(k);
    switch (kind_) {
      case Kind::poisson:
        ratio = lambda_ / (kd + 1.0);
        break;
      case Kind::neg_binomial:
        ratio = (1.0 - qbar_) * (r_ + kd) / (kd + 1.0);
        break;
      case Kind::binomial:
        ratio = (k >= trials_) ? 0.0
                               : ptilde_ * (static_cast<double>(trials_) - kd) /
                                     ((1.0 - ptilde_) * (kd + 1.0));
        break;
      default:
        ratio = 0.0;
    }
    if (ratio <= 0.0) break;
    term *= ratio;
    ++k;
    acc += term;
    if (ratio < 1.0) {
      const double rest = term * ratio / (1.0 - ratio);
      if (rest <= rel_tol * acc) break;
    }
    if (acc > 1e250) {  // rescale long ascents toward a distant mode
      shift += std::log(acc);
      term /= acc;
      acc = 1.0;
    }
    if (k > x + 100000000) {
      throw InstabilityError("ApproxFamily::tail: summation failed to certify");
    }
  }
  return LogReal::from_log(shift + std::log(acc));
}

Cplx ApproxFamily::cf(Cplx u) const {
  switch (kind_) {
    case Kind::poisson:
      return std::exp(lambda_ * (std::exp(u) - 1.0));
    case Kind::neg_binomial: {
      const double pbar = 1.0 - qbar_;
      if (!(pbar * std::exp(u.real()) < 1.0)) {
        throw RegimeError("ApproxFamily::cf: negative binomial needs pbar e^{Re u} < 1");
      }
      return std::exp(r_ * std::log(qbar_ / (1.0 - pbar * std::exp(u))));
    }
    case Kind::binomial:
      // Integer exponent: exp(N log z) equals z^N on every branch.
      return std::exp(static_cast<double>(trials_) *
                      std::log(1.0 + ptilde_ * (std::exp(u) - 1.0)));
  }
  throw RegimeError("ApproxFamily::cf: unknown kind");
}

double ApproxFamily::mean() const {
  switch (kind_) {
    case Kind::poisson:
      return lambda_;
    case Kind::neg_binomial:
      return r_ * (1.0 - qbar_) / qbar_;
    case Kind::binomial:
      return has_mean_exact_ ? mean_exact_ : static_cast<double>(trials_) * ptilde_;
  }
  return 0.0;
}

double ApproxFamily::variance() const {
  switch (kind_) {
    case Kind::poisson:
      return lambda_;
    case Kind::neg_binomial:
      return r_ * (1.0 - qbar_) / (qbar_ * qbar_);
    case Kind::binomial:
      return static_cast<double>(trials_) * ptilde_ * (1.0 - ptilde_);
  }
  return 0.0;
}

void ApproxFamily::write_json(std::ostream& os) const {
  switch (kind_) {
    case Kind::poisson:
      os << "{\"family\":\"poisson\",\"lambda\":" << fmt17(lambda_) << "}";
      return;
    case Kind::neg_binomial:
      os << "{\"family\":\"neg_binomial\",\"r\":" << fmt17(r_) << ",\"qbar\":" << fmt17(qbar_)
         << ",\"pbar\":" << fmt17(pbar()) << "}";
      return;
    case Kind::binomial:
      os << "{\"family\":\"binomial\",\"trials\":" << trials_ << ",\"ptilde\":" << fmt17(ptilde_)
         << ",\"mean\":" << fmt17(mean()) << "}";
      return;
  }
}

}  // namespace ldev
