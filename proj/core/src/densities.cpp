#include "northpole/densities.hpp"

#include <cmath>
#include <string>

#include "northpole/error.hpp"
#include "northpole/special.hpp"

namespace northpole::densities {

namespace {

void require_dimension(int p, int minimum, const char* op) {
  if (p < minimum) {
    throw PreconditionError(std::string(op) + " requires p >= " +
                            std::to_string(minimum) + ", got " +
                            std::to_string(p));
  }
}

}  // namespace

double log_normalizer(int p) {
  require_dimension(p, 2, "log_normalizer");
  return special::log_gamma(0.5 * p) - special::log_gamma(0.5) -
         special::log_gamma(0.5 * (p - 1));
}

double density_f(double x, int p) {
  require_dimension(p, 1, "density_f");
  if (p == 1) {
    throw PreconditionError(
        "degenerate density: f(.|1) is two point masses at ±1");
  }
  const double ax = std::fabs(x);
  if (p == 2 && ax == 1.0) {
    throw PreconditionError("pole at boundary: f(.|2) diverges at |x| = 1");
  }
  if (!(ax < 1.0)) return 0.0;
  if (p == 3) return 0.5;
  const double exponent = 0.5 * (p - 3);
  return std::exp(log_normalizer(p) + exponent * std::log1p(-x * x));
}

double cdf_f(double x, int p) {
  require_dimension(p, 1, "cdf_f");
  if (p == 1) {
    if (x < -1.0) return 0.0;
    if (x < 1.0) return 0.5;
    return 1.0;
  }
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double upper =
      0.5 + 0.5 * special::regularized_incomplete_beta(x * x, 0.5, 0.5 * (p - 1));
  return x >= 0.0 ? upper : 1.0 - upper;
}

double sample_f(int p, RngStream& rng) {
  require_dimension(p, 1, "sample_f");
  for (;;) {
    const double z1 = rng.normal();
    double sum = z1 * z1;
    for (int i = 1; i < p; ++i) {
      const double z = rng.normal();
      sum += z * z;
    }
    if (sum > 0.0) {
      const double x = z1 / std::sqrt(sum);
      // Rounding can push |x| a hair past 1 when p = 1.
      return std::fmax(-1.0, std::fmin(1.0, x));
    }
  }
}

double beta_density_g0(double y, int p) {
  require_dimension(p, 2, "beta_density_g0");
  if (!(y > 0.0 && y < 1.0)) return 0.0;
  return std::exp(log_normalizer(p) - 0.5 * std::log(y) +
                  (0.5 * (p - 1) - 1.0) * std::log1p(-y));
}

double beta_cdf_g0(double y, int p) {
  require_dimension(p, 2, "beta_cdf_g0");
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  return special::regularized_incomplete_beta(y, 0.5, 0.5 * (p - 1));
}

}  // namespace northpole::densities
