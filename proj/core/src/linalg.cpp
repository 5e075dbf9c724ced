#include "northpole/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "northpole/error.hpp"

namespace northpole::linalg {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw PreconditionError(std::string(op) + ": dimension mismatch (" +
                            std::to_string(a) + " vs " + std::to_string(b) +
                            ")");
  }
}

}  // namespace

SquareMatrix::SquareMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw PreconditionError("SquareMatrix requires dim >= 1");
}

SquareMatrix::SquareMatrix(std::size_t dim, std::vector<double> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (dim == 0) throw PreconditionError("SquareMatrix requires dim >= 1");
  if (data_.size() != dim * dim) {
    throw PreconditionError("SquareMatrix: expected " +
                            std::to_string(dim * dim) + " entries, got " +
                            std::to_string(data_.size()));
  }
  if (!std::all_of(data_.begin(), data_.end(),
                   [](double x) { return std::isfinite(x); })) {
    throw PreconditionError("SquareMatrix: non-finite entry");
  }
}

SquareMatrix SquareMatrix::identity(std::size_t dim) {
  SquareMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t dim = rows.size();
  std::vector<double> data;
  data.reserve(dim * dim);
  for (const auto& r : rows) {
    if (r.size() != dim) throw PreconditionError("from_rows: matrix not square");
    data.insert(data.end(), r.begin(), r.end());
  }
  return SquareMatrix(dim, std::move(data));
}

SquareMatrix SquareMatrix::transpose() const {
  SquareMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

UnitVector::UnitVector(std::vector<double> entries, double tolerance)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw PreconditionError("UnitVector requires dim >= 1");
  const double n = norm(entries_);
  if (!(std::fabs(n - 1.0) <= tolerance)) {
    throw PreconditionError("UnitVector: norm " + std::to_string(n) +
                            " is not 1");
  }
}

UnitVector UnitVector::normalized(std::vector<double> v) {
  if (v.empty()) throw PreconditionError("UnitVector requires dim >= 1");
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw PreconditionError("UnitVector::normalized: cannot normalize vector");
  }
  for (double& x : v) x /= n;
  return UnitVector(Unchecked{}, std::move(v));
}

UnitVector UnitVector::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw PreconditionError("UnitVector::basis: index out of range");
  std::vector<double> e(dim, 0.0);
  e[k] = 1.0;
  return UnitVector(Unchecked{}, std::move(e));
}

UnitVector UnitVector::operator-() const {
  std::vector<double> neg(entries_);
  for (double& x : neg) x = -x;
  return UnitVector(Unchecked{}, std::move(neg));
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double dot(std::span<const double> u, std::span<const double> v) {
  require_same_dim(u.size(), v.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

UnitVector sample_uniform_sphere(std::size_t d, RngStream& rng) {
  if (d == 0) throw PreconditionError("sample_uniform_sphere requires d >= 1");
  std::vector<double> z(d);
  for (;;) {
    double sum = 0.0;
    for (double& x : z) {
      x = rng.normal();
      sum += x * x;
    }
    if (sum > 0.0) return UnitVector::normalized(std::move(z));
  }
}

SquareMatrix complete_orthogonal(const UnitVector& w) {
  const std::size_t d = w.dim();
  std::vector<double> v(w.entries().begin(), w.entries().end());
  for (double& x : v) x = -x;
  v[0] += 1.0;
  const double vv = dot(v, v);
  if (std::sqrt(vv) < 1e-12) return SquareMatrix::identity(d);

  SquareMatrix h = SquareMatrix::identity(d);
  const double scale = 2.0 / vv;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) h(i, j) -= scale * v[i] * v[j];
  }
  return h;
}

SquareMatrix matmul(const SquareMatrix& a, const SquareMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "matmul");
  const std::size_t n = a.dim();
  SquareMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

SquareMatrix matmul_transposed(const SquareMatrix& a, const SquareMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "matmul_transposed");
  const std::size_t n = a.dim();
  SquareMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) c(i, j) = dot(a.row(i), b.row(j));
  }
  return c;
}

std::vector<double> matvec(const SquareMatrix& a, std::span<const double> x) {
  require_same_dim(a.dim(), x.size(), "matvec");
  std::vector<double> y(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

SquareMatrix matrix_power(const SquareMatrix& a, int k) {
  if (k < 0) throw PreconditionError("matrix_power requires k >= 0");
  SquareMatrix result = SquareMatrix::identity(a.dim());
  for (int i = 0; i < k; ++i) result = matmul(result, a);
  return result;
}

double orthogonality_defect(const SquareMatrix& a) {
  const std::size_t n = a.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s += a(r, i) * a(r, j);
      if (i == j) s -= 1.0;
      // Written so that a NaN entry propagates instead of being skipped.
      if (!(std::fabs(s) <= worst)) worst = std::fabs(s);
    }
  }
  return worst;
}

double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::fabs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

}  // namespace northpole::linalg
