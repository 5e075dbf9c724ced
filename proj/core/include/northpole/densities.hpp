#pragma once

#include "northpole/rng.hpp"

namespace northpole::densities {

// The family f(.|p): the law of one coordinate of a uniform point on the unit
// sphere in R^p, proportional to (1 - x^2)^((p-3)/2) on (-1, 1). p = 2 is the
// arcsine law, p = 3 is uniform, and p = 1 degenerates to ±1 with equal mass.

/// ln of the normalizing constant Γ(p/2) / (Γ(1/2) Γ((p-1)/2)); p >= 2.
double log_normalizer(int p);

/// Density of f(.|p). Zero outside (-1, 1).
/// Throws PreconditionError for p = 1 (no density) and for p = 2 at |x| = 1.
double density_f(double x, int p);

/// CDF of f(.|p). For p = 1 this is the step function with jumps of 1/2 at ±1.
double cdf_f(double x, int p);

/// Z_1 / |Z| for p iid standard normals drawn from rng; ±1 when p = 1.
double sample_f(int p, RngStream& rng);

/// Beta(1/2, (p-1)/2) density, the law of X^2 for X ~ f(.|p). Zero outside (0, 1).
double beta_density_g0(double y, int p);

/// Beta(1/2, (p-1)/2) CDF.
double beta_cdf_g0(double y, int p);

}  // namespace northpole::densities
