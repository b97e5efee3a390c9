#pragma once

#include <cstdint>
#include <string>

namespace ldev {

// Solutions of (log Fhat(u))' = x for the four tilted normalizers, in closed
// form.  log_normalizer = log Fhat(value) evaluated the stable way; each
// constructor asserts the defining equation to 1e-12 relative.
enum class SaddleKind { binomial_h, poisson_z, nb_w, bi_htilde };

struct SaddleSolution {
  SaddleKind kind;
  double value = 0.0;    // h, z, w, or htilde
  double expm1 = 0.0;    // e^{value} - 1
  double log_normalizer = 0.0;
};

const char* saddle_kind_name(SaddleKind k);

// n ln(1 + nu1 (e^h - 1)) tilt: h = ln(1+y) - ln(1 - nu1*y/(1-nu1)).
SaddleSolution saddle_binomial_h(double n, double nu1, double x);

// Poisson tilt: z = ln(1+y) = ln(x/(n nu1)); normalizer n nu1 (e^z - 1).
SaddleSolution saddle_poisson_z(double n, double nu1, double x);

// Negative binomial tilt: w = ln(x / ((r+x) pbar)); requires x > 0.
SaddleSolution saddle_nb_w(double r, double pbar, double x);

// Binomial tilt: htilde = ln(x (1-ptilde) / (ptilde (N-x))); 0 < x < N.
SaddleSolution saddle_bi_htilde(std::int64_t trials, double ptilde, double x);

}  // namespace ldev
