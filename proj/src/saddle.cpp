#include "ldev/saddle.hpp"

#include <cmath>

#include "ldev/errors.hpp"

namespace ldev {

const char* saddle_kind_name(SaddleKind k) {
  switch (k) {
    case SaddleKind::binomial_h:
      return "binomial_h";
    case SaddleKind::poisson_z:
      return "poisson_z";
    case SaddleKind::nb_w:
      return "nb_w";
    case SaddleKind::bi_htilde:
      return "bi_htilde";
  }
  return "?";
}

namespace {

// Residual of the defining equation (log Fhat)'(u) = x, checked relative
// to x.  Closed forms should land within a few ulps; 1e-12 flags misuse.
void check_residual(const char* who, double derivative, double x) {
  const double scale = std::max(std::abs(x), 1.0);
  if (!(std::abs(derivative - x) <= 1e-12 * scale)) {
    throw InstabilityError(std::string(who) + ": saddle equation residual exceeds 1e-12");
  }
}

}  // namespace

SaddleSolution saddle_binomial_h(double n, double nu1, double x) {
  if (!(n > 0.0) || !(nu1 > 0.0 && nu1 < 1.0)) {
    throw RegimeError("saddle_binomial_h: need n > 0 and nu1 in (0,1)");
  }
  if (!(x > 0.0 && x < n)) throw RegimeError("saddle_binomial_h: need 0 < x < n");
  const double y = (x - n * nu1) / (n * nu1);
  const double s = nu1 * y / (1.0 - nu1);
  if (!(s < 1.0)) throw RegimeError("saddle_binomial_h: tilt parameter s >= 1");
  SaddleSolution out;
  out.kind = SaddleKind::binomial_h;
  out.value = std::log1p(y) - std::log1p(-s);
  // e^h - 1 = (y + s) / (1 - s) = y / (1 - nu1 - nu1 y), exact in the model.
  out.expm1 = y / (1.0 - nu1 - nu1 * y);
  out.log_normalizer = -n * std::log1p(-s);
  check_residual("saddle_binomial_h", n * nu1 * (1.0 + out.expm1) / (1.0 + nu1 * out.expm1), x);
  return out;
}

SaddleSolution saddle_poisson_z(double n, double nu1, double x) {
  if (!(n > 0.0) || !(nu1 > 0.0)) throw RegimeError("saddle_poisson_z: need n, nu1 > 0");
  if (!(x > 0.0)) throw RegimeError("saddle_poisson_z: need x > 0");
  const double y = (x - n * nu1) / (n * nu1);
  SaddleSolution out;
  out.kind = SaddleKind::poisson_z;
  out.value = std::log1p(y);
  out.expm1 = y;
  out.log_normalizer = n * nu1 * y;
  check_residual("saddle_poisson_z", n * nu1 * (1.0 + y), x);
  return out;
}

SaddleSolution saddle_nb_w(double r, double pbar, double x) {
  if (!(r > 0.0) || !(pbar > 0.0 && pbar < 1.0)) {
    throw RegimeError("saddle_nb_w: need r > 0 and pbar in (0,1)");
  }
  if (!(x > 0.0)) throw RegimeError("saddle_nb_w: need x > 0");
  const double qbar = 1.0 - pbar;
  SaddleSolution out;
  out.kind = SaddleKind::nb_w;
  out.value = std::log(x / ((r + x) * pbar));
  out.expm1 = std::expm1(out.value);
  // log (qbar / (1 - pbar e^w))^r with 1 - pbar e^w = r/(r+x).
  out.log_normalizer = r * std::log(qbar * (r + x) / r);
  check_residual("saddle_nb_w", r * pbar * std::exp(out.value) / (1.0 - pbar * std::exp(out.value)),
                 x);
  return out;
}

SaddleSolution saddle_bi_htilde(std::int64_t trials, double ptilde, double x) {
  if (trials < 1 || !(ptilde > 0.0 && ptilde < 1.0)) {
    throw RegimeError("saddle_bi_htilde: need trials >= 1 and ptilde in (0,1)");
  }
  const double nd = static_cast<double>(trials);
  if (!(x > 0.0 && x < nd)) throw RegimeError("saddle_bi_htilde: need 0 < x < trials");
  SaddleSolution out;
  out.kind = SaddleKind::bi_htilde;
  out.value = std::log(x * (1.0 - ptilde) / (ptilde * (nd - x)));
  out.expm1 = std::expm1(out.value);
  // log (1 + ptilde (e^h - 1))^N with 1 + ptilde(e^h - 1) = N(1-ptilde)/(N-x).
  out.log_normalizer = nd * std::log(nd * (1.0 - ptilde) / (nd - x));
  const double eh = std::exp(out.value);
  check_residual("saddle_bi_htilde", nd * ptilde * eh / (1.0 + ptilde * (eh - 1.0)), x);
  return out;
}

}  // namespace ldev
