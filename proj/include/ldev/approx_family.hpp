#pragma once

#include <cstdint>
#include <iosfwd>

#include "ldev/logreal.hpp"
#include "ldev/quadrature.hpp"

namespace ldev {

// Negative binomial parameters matched to the two-runs mean and variance:
//   D = n p^3 (2-3p) - 2 p^3 (1-p),  pbar = D/(n p^2 + D),  r = n^2 p^4 / D.
struct NBParams {
  double r = 0.0;
  double qbar = 0.0;
  double pbar = 0.0;
};

NBParams nb_params(std::int64_t n, double p);

// Binomial parameters for the success-failure statistic: alpha = p(1-p),
// Ntilde = n^2/(3n-2), N = floor(Ntilde), ptilde = n*alpha/N.  The family
// mean is n*alpha exactly by construction; mean_exact carries that product
// so it survives double rounding of ptilde.
struct BIParams {
  std::int64_t trials = 0;  // N
  double ntilde = 0.0;
  double ptilde = 0.0;
  double alpha = 0.0;
  double mean_exact = 0.0;  // n*alpha
};

BIParams bi_params(std::int64_t n, double p);

// Tail parameter lambda* = nu1 * (1 - nu1*y/(1-nu1)); must stay positive.
double lambda_star(double nu1, double y);

// The three approximating laws.  PMFs go through log-Gamma for uniform
// accuracy in k; tails are summed upward with a certified geometric cutoff
// at relative 1e-18.
class ApproxFamily {
 public:
  enum class Kind { poisson, neg_binomial, binomial };

  static ApproxFamily poisson(double lambda);
  static ApproxFamily neg_binomial(double r, double qbar);
  static ApproxFamily neg_binomial(const NBParams& np) { return neg_binomial(np.r, np.qbar); }
  static ApproxFamily binomial(std::int64_t trials, double ptilde);
  static ApproxFamily binomial(const BIParams& bp);

  Kind kind() const { return kind_; }
  LogReal pmf(std::int64_t k) const;
  LogReal tail(std::int64_t x) const;  // P(X >= x)
  Cplx cf(Cplx u) const;               // E e^{uX}
  double mean() const;
  double variance() const;
  bool in_support(std::int64_t k) const;

  double lambda() const { return lambda_; }
  double r() const { return r_; }
  double qbar() const { return qbar_; }
  double pbar() const { return 1.0 - qbar_; }
  std::int64_t trials() const { return trials_; }
  double ptilde() const { return ptilde_; }

  void write_json(std::ostream& os) const;

 private:
  ApproxFamily() = default;
  Kind kind_ = Kind::poisson;
  double lambda_ = 0.0;
  double r_ = 0.0, qbar_ = 0.0;
  std::int64_t trials_ = 0;
  double ptilde_ = 0.0;
  double mean_exact_ = 0.0;  // binomial only: n*alpha when built from BIParams
  bool has_mean_exact_ = false;
};

}  // namespace ldev
