#pragma once

#include <vector>

#include "northpole/linalg.hpp"
#include "northpole/rng.hpp"

namespace northpole::haar {

using linalg::SquareMatrix;
using linalg::UnitVector;

/// Every matrix a sampler emits is checked against this bound.
inline constexpr double kOrthogonalityTolerance = 1e-10;

enum class HaarMethod { Qr, Decomposition };

struct HaarSample {
  SquareMatrix gamma;
  HaarMethod method;
};

/// Block partition of an orthogonal matrix around its (1,1) entry, together
/// with the normalized off-diagonal blocks
///   w1 = gamma21 / sqrt(1 - gamma11^2),  w2 = gamma12' / sqrt(1 - gamma11^2).
struct GammaPartition {
  double gamma11;
  std::vector<double> gamma21;    // first column below the corner
  std::vector<double> gamma12_t;  // first row right of the corner, as a column
  SquareMatrix gamma22;
  UnitVector w1;
  UnitVector w2;
};

/// Raw Householder QR of a Gaussian matrix is biased; Skip exists only to
/// build the mutation fixture used by the verification battery.
enum class QrSignFix { Apply, Skip };

/// Haar matrix on O_p from the QR factorization of a p x p standard normal
/// matrix, with columns rescaled so that R has a positive diagonal.
HaarSample sample_haar_qr(int p, RngStream& rng,
                          QrSignFix sign_fix = QrSignFix::Apply);

struct DecompositionOptions {
  /// Draw the O_{p-2} factor with this same sampler while p - 2 >= 3,
  /// instead of falling back to the QR sampler.
  bool recursive = false;
};

/// Haar matrix on O_p (p >= 3) built from its (1,1) entry, two uniform
/// points on S_{p-1} and a Haar matrix on O_{p-2}:
///   1. gamma11 ~ f(.|p)
///   2. u1, u2 iid uniform on S_{p-1}; gamma21 = s u1, gamma12' = s u2 with
///      s = sqrt(1 - gamma11^2)
///   3. h_i = complete_orthogonal(u_i)
///   4. delta Haar on O_{p-2}; gamma22 = h1 diag(-gamma11, delta) h2'
HaarSample sample_haar_decomposition(int p, RngStream& rng,
                                     DecompositionOptions options = {});

/// Splits g into its blocks. Requires g orthogonal within 1e-10 and
/// 1 - g11^2 >= 1e-14; otherwise throws PreconditionError ("outside O_p-plus"
/// for the latter).
GammaPartition decompose_gamma(const SquareMatrix& g);

/// The block matrix [[gamma11, s u2'], [s u1, h1 diag(-gamma11, delta) h2']].
/// Requires |gamma11| < 1, dim u1 = dim u2 = p - 1 >= 2, and delta
/// orthogonal of dimension p - 2.
SquareMatrix assemble_gamma(double gamma11, const UnitVector& u1,
                            const UnitVector& u2, const SquareMatrix& delta);

/// Inverse of decompose_gamma on the raw blocks.
SquareMatrix reassemble(const GammaPartition& part);

}  // namespace northpole::haar
