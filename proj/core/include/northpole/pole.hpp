#pragma once

#include <span>

#include "northpole/haar.hpp"
#include "northpole/rng.hpp"

namespace northpole::pole {

// U_k = x0' Γ^k x0 with x0 the first basis vector ("north pole") and Γ Haar
// on O_p. By invariance its law does not depend on the choice of x0.

enum class StatSource { Direct, Representation };

struct PoleStatistic {
  int k;
  int p;
  double value;
  StatSource source;
};

/// Independent draws with xi_i ~ f(.|p + 1 - i).
struct XiTriple {
  double xi1;
  double xi2;
  double xi3;
};

/// (g^k)_11. Throws if g is not orthogonal within 1e-10 or k < 1.
double u_k_direct(const linalg::SquareMatrix& g, int k);

/// y' g^k y for a unit vector y; same preconditions as u_k_direct.
double quadratic_form_power(const linalg::SquareMatrix& g,
                            const linalg::UnitVector& y, int k);

/// gamma11^2 + (1 - gamma11^2) w2'w1, which equals (g^2)_11.
double u2_identity(const haar::GammaPartition& part);

/// gamma11^3 + 2 gamma11 (1 - gamma11^2) w2'w1 + (1 - gamma11^2) w2' gamma22 w1,
/// which equals (g^3)_11.
double u3_identity(const haar::GammaPartition& part);

/// xi1^2 + (1 - xi1^2) xi2.
double u2_kernel(double xi1, double xi2);

/// xi1^3 + 2 xi1 (1 - xi1^2) xi2 + (1 - xi1^2)(-xi1 xi2^2 + (1 - xi2^2) xi3).
double u3_kernel(const XiTriple& t);

using U2Kernel = double (*)(double, double);

/// Draws (xi1, xi2, xi3) for dimension p >= 3; xi3 is ±1 when p = 3.
XiTriple sample_xi(int p, RngStream& rng);

/// U_1 ~ f(.|p), p >= 2.
PoleStatistic sample_u1(int p, RngStream& rng);

/// U_2 via u2_kernel(xi1, xi2), p >= 3. The kernel is injectable so the
/// verification battery can be run against a deliberately broken one.
PoleStatistic sample_u2(int p, RngStream& rng, U2Kernel kernel = &u2_kernel);

/// U_3 via u3_kernel(sample_xi(p)), p >= 3.
PoleStatistic sample_u3(int p, RngStream& rng);

/// U_k for k in {1, 2, 3} from the exact representations.
PoleStatistic sample_exact(int k, int p, RngStream& rng);

/// U_k for any k >= 1 as (Γ^k)_11 over a Haar draw of the given method.
PoleStatistic sample_direct(int k, int p, haar::HaarMethod method,
                            RngStream& rng);

}  // namespace northpole::pole
