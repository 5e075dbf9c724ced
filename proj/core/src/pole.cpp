#include "northpole/pole.hpp"

#include <string>

#include "northpole/densities.hpp"
#include "northpole/error.hpp"

namespace northpole::pole {

namespace {

void require_power(int k) {
  if (k < 1) throw PreconditionError("U_k requires k >= 1");
}

void require_representable(int p, const char* op) {
  if (p < 3) {
    throw PreconditionError(std::string(op) + " requires p >= 3, got " +
                            std::to_string(p));
  }
}

void require_orthogonal(const linalg::SquareMatrix& g) {
  const double defect = linalg::orthogonality_defect(g);
  if (!(defect <= haar::kOrthogonalityTolerance)) {
    throw PreconditionError("U_k requires an orthogonal matrix (defect " +
                            std::to_string(defect) + ")");
  }
}

}  // namespace

double quadratic_form_power(const linalg::SquareMatrix& g,
                            const linalg::UnitVector& y, int k) {
  require_power(k);
  require_orthogonal(g);
  std::vector<double> v(y.entries().begin(), y.entries().end());
  for (int i = 0; i < k; ++i) v = linalg::matvec(g, v);
  return linalg::dot(y.entries(), v);
}

double u_k_direct(const linalg::SquareMatrix& g, int k) {
  return quadratic_form_power(g, linalg::UnitVector::basis(g.dim()), k);
}

double u2_identity(const haar::GammaPartition& part) {
  const double a = part.gamma11;
  return a * a + (1.0 - a * a) * linalg::dot(part.w2, part.w1);
}

double u3_identity(const haar::GammaPartition& part) {
  const double a = part.gamma11;
  const double c = 1.0 - a * a;
  const std::vector<double> g22w1 = linalg::matvec(part.gamma22, part.w1.entries());
  return a * a * a + 2.0 * a * c * linalg::dot(part.w2, part.w1) +
         c * linalg::dot(part.w2.entries(), g22w1);
}

double u2_kernel(double xi1, double xi2) {
  const double w = xi1 * xi1;
  return w + (1.0 - w) * xi2;
}

double u3_kernel(const XiTriple& t) {
  const double a = t.xi1;
  const double b = t.xi2;
  const double c1 = 1.0 - a * a;
  const double c2 = 1.0 - b * b;
  return a * a * a + 2.0 * a * c1 * b + c1 * (-a * b * b + c2 * t.xi3);
}

XiTriple sample_xi(int p, RngStream& rng) {
  require_representable(p, "sample_xi");
  XiTriple t{};
  t.xi1 = densities::sample_f(p, rng);
  t.xi2 = densities::sample_f(p - 1, rng);
  t.xi3 = densities::sample_f(p - 2, rng);
  return t;
}

PoleStatistic sample_u1(int p, RngStream& rng) {
  if (p < 2) throw PreconditionError("sample_u1 requires p >= 2");
  return {1, p, densities::sample_f(p, rng), StatSource::Representation};
}

PoleStatistic sample_u2(int p, RngStream& rng, U2Kernel kernel) {
  require_representable(p, "sample_u2");
  const double xi1 = densities::sample_f(p, rng);
  const double xi2 = densities::sample_f(p - 1, rng);
  return {2, p, kernel(xi1, xi2), StatSource::Representation};
}

PoleStatistic sample_u3(int p, RngStream& rng) {
  require_representable(p, "sample_u3");
  return {3, p, u3_kernel(sample_xi(p, rng)), StatSource::Representation};
}

PoleStatistic sample_exact(int k, int p, RngStream& rng) {
  switch (k) {
    case 1:
      return sample_u1(p, rng);
    case 2:
      return sample_u2(p, rng);
    case 3:
      return sample_u3(p, rng);
    default:
      throw PreconditionError(
          "no exact representation for k = " + std::to_string(k) +
          "; use --method direct");
  }
}

PoleStatistic sample_direct(int k, int p, haar::HaarMethod method,
                            RngStream& rng) {
  require_power(k);
  const haar::HaarSample s = method == haar::HaarMethod::Qr
                                 ? haar::sample_haar_qr(p, rng)
                                 : haar::sample_haar_decomposition(p, rng);
  return {k, p, u_k_direct(s.gamma, k), StatSource::Direct};
}

}  // namespace northpole::pole
