#pragma once

namespace northpole::special {

/// ln Γ(x) for x > 0 (Lanczos, g = 7; relative error below 1e-13).
double log_gamma(double x);

/// ln B(a, b).
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b) to about 1e-12 absolute.
///
/// Continued fraction (modified Lentz) evaluated on whichever side of
/// x = (a + 1) / (a + b + 2) converges fastest; the other side comes from
/// I_x(a, b) = 1 - I_{1-x}(b, a). Throws NumericError after 500 iterations.
double regularized_incomplete_beta(double x, double a, double b);

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace northpole::special
