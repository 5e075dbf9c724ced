#include "northpole/haar.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "northpole/densities.hpp"
#include "northpole/error.hpp"

namespace northpole::haar {

namespace {

constexpr int kMaxRedraws = 16;
constexpr double kOutsidePlusThreshold = 1e-14;

void require_orthogonal(const SquareMatrix& g, const char* op) {
  const double defect = linalg::orthogonality_defect(g);
  if (!(defect <= kOrthogonalityTolerance)) {
    throw PreconditionError(std::string(op) +
                            ": matrix is not orthogonal (defect " +
                            std::to_string(defect) + ")");
  }
}

}  // namespace

HaarSample sample_haar_qr(int p, RngStream& rng, QrSignFix sign_fix) {
  if (p < 1) throw PreconditionError("sample_haar_qr requires p >= 1");
  const auto n = static_cast<Eigen::Index>(p);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    Eigen::MatrixXd z(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) z(i, j) = rng.normal();
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
    Eigen::MatrixXd q = qr.householderQ();
    if (sign_fix == QrSignFix::Apply) {
      const auto r_diag = qr.matrixQR().diagonal();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (r_diag(j) < 0.0) q.col(j) *= -1.0;
      }
    }
    std::vector<double> entries(static_cast<std::size_t>(p * p));
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        entries[static_cast<std::size_t>(i * n + j)] = q(i, j);
      }
    }
    bool finite = true;
    for (double x : entries) finite = finite && std::isfinite(x);
    if (!finite) continue;
    SquareMatrix gamma(static_cast<std::size_t>(p), std::move(entries));
    if (linalg::orthogonality_defect(gamma) <= kOrthogonalityTolerance) {
      return {std::move(gamma), HaarMethod::Qr};
    }
  }
  throw NumericError("sample_haar_qr: Gaussian draws repeatedly singular");
}

HaarSample sample_haar_decomposition(int p, RngStream& rng,
                                     DecompositionOptions options) {
  if (p < 3) {
    throw PreconditionError(
        "unsupported dimension: the decomposition sampler requires p >= 3, "
        "got " + std::to_string(p));
  }
  const auto sphere_dim = static_cast<std::size_t>(p - 1);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const double gamma11 = densities::sample_f(p, rng);
    // |gamma11| = 1 has probability zero; keep O_p-plus.
    if (!(std::fabs(gamma11) < 1.0)) continue;
    const UnitVector u1 = linalg::sample_uniform_sphere(sphere_dim, rng);
    const UnitVector u2 = linalg::sample_uniform_sphere(sphere_dim, rng);
    const SquareMatrix delta =
        (options.recursive && p - 2 >= 3)
            ? sample_haar_decomposition(p - 2, rng, options).gamma
            : sample_haar_qr(p - 2, rng).gamma;
    SquareMatrix gamma = assemble_gamma(gamma11, u1, u2, delta);
    const double defect = linalg::orthogonality_defect(gamma);
    if (!(defect <= kOrthogonalityTolerance)) {
      throw NumericError("sample_haar_decomposition: assembled matrix has "
                         "orthogonality defect " + std::to_string(defect));
    }
    return {std::move(gamma), HaarMethod::Decomposition};
  }
  throw NumericError("sample_haar_decomposition: could not draw gamma11 in (-1, 1)");
}

GammaPartition decompose_gamma(const SquareMatrix& g) {
  require_orthogonal(g, "decompose_gamma");
  const std::size_t p = g.dim();
  if (p < 2) throw PreconditionError("decompose_gamma requires p >= 2");
  const double gamma11 = g(0, 0);
  const double slack = 1.0 - gamma11 * gamma11;
  if (!(slack >= kOutsidePlusThreshold)) {
    throw PreconditionError(
        "outside O_p-plus: |g11| is too close to 1 to normalize the off-diagonal blocks");
  }
  const double s = std::sqrt(slack);
  const std::size_t m = p - 1;
  std::vector<double> gamma21(m);
  std::vector<double> gamma12_t(m);
  std::vector<double> w1(m);
  std::vector<double> w2(m);
  SquareMatrix gamma22(m);
  for (std::size_t i = 0; i < m; ++i) {
    gamma21[i] = g(i + 1, 0);
    gamma12_t[i] = g(0, i + 1);
    w1[i] = gamma21[i] / s;
    w2[i] = gamma12_t[i] / s;
    for (std::size_t j = 0; j < m; ++j) gamma22(i, j) = g(i + 1, j + 1);
  }
  return {gamma11,
          std::move(gamma21),
          std::move(gamma12_t),
          std::move(gamma22),
          UnitVector(std::move(w1)),
          UnitVector(std::move(w2))};
}

SquareMatrix assemble_gamma(double gamma11, const UnitVector& u1,
                            const UnitVector& u2, const SquareMatrix& delta) {
  if (!(std::fabs(gamma11) < 1.0)) {
    throw PreconditionError("assemble_gamma requires |gamma11| < 1");
  }
  const std::size_t m = u1.dim();
  if (m < 2 || u2.dim() != m || delta.dim() != m - 1) {
    throw PreconditionError(
        "assemble_gamma: dimension mismatch (need dim u1 = dim u2 = "
        "dim delta + 1 >= 2)");
  }
  require_orthogonal(delta, "assemble_gamma");

  SquareMatrix a22(m);
  a22(0, 0) = -gamma11;
  for (std::size_t i = 0; i < m - 1; ++i) {
    for (std::size_t j = 0; j < m - 1; ++j) a22(i + 1, j + 1) = delta(i, j);
  }
  const SquareMatrix h1 = linalg::complete_orthogonal(u1);
  const SquareMatrix h2 = linalg::complete_orthogonal(u2);
  const SquareMatrix gamma22 =
      linalg::matmul_transposed(linalg::matmul(h1, a22), h2);

  const double s = std::sqrt(1.0 - gamma11 * gamma11);
  SquareMatrix g(m + 1);
  g(0, 0) = gamma11;
  for (std::size_t i = 0; i < m; ++i) {
    g(i + 1, 0) = s * u1[i];
    g(0, i + 1) = s * u2[i];
    for (std::size_t j = 0; j < m; ++j) g(i + 1, j + 1) = gamma22(i, j);
  }
  return g;
}

SquareMatrix reassemble(const GammaPartition& part) {
  const std::size_t m = part.gamma22.dim();
  SquareMatrix g(m + 1);
  g(0, 0) = part.gamma11;
  for (std::size_t i = 0; i < m; ++i) {
    g(i + 1, 0) = part.gamma21[i];
    g(0, i + 1) = part.gamma12_t[i];
    for (std::size_t j = 0; j < m; ++j) g(i + 1, j + 1) = part.gamma22(i, j);
  }
  return g;
}

}  // namespace northpole::haar
