#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "northpole/rng.hpp"

namespace northpole::linalg {

/// Dense p x p real matrix, row-major contiguous storage.
class SquareMatrix {
 public:
  /// Zero matrix.
  explicit SquareMatrix(std::size_t dim);
  /// Takes ownership of dim*dim row-major entries; throws on size mismatch
  /// or non-finite entries.
  SquareMatrix(std::size_t dim, std::vector<double> row_major);

  static SquareMatrix identity(std::size_t dim);
  static SquareMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  std::size_t dim() const noexcept { return dim_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * dim_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * dim_ + j];
  }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const double> data() const noexcept { return data_; }

  SquareMatrix transpose() const;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

/// Vector of Euclidean norm 1 (within 1e-10 when built from raw entries).
class UnitVector {
 public:
  /// Validates |‖v‖ - 1| <= tolerance.
  explicit UnitVector(std::vector<double> entries, double tolerance = 1e-10);

  /// Scales v to unit length; throws on the zero vector.
  static UnitVector normalized(std::vector<double> v);

  /// k-th standard basis vector of R^dim.
  static UnitVector basis(std::size_t dim, std::size_t k = 0);

  std::size_t dim() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const noexcept { return entries_[i]; }
  std::span<const double> entries() const noexcept { return entries_; }

  UnitVector operator-() const;

  friend bool operator==(const UnitVector&, const UnitVector&) = default;

 private:
  struct Unchecked {};
  UnitVector(Unchecked, std::vector<double> entries)
      : entries_(std::move(entries)) {}

  std::vector<double> entries_;
};

double norm(std::span<const double> v);

double dot(std::span<const double> u, std::span<const double> v);
inline double dot(const UnitVector& u, const UnitVector& v) {
  return dot(u.entries(), v.entries());
}

/// Normalized vector of d iid standard normals; redraws the zero vector.
UnitVector sample_uniform_sphere(std::size_t d, RngStream& rng);

/// Orthogonal matrix whose first column is w.
///
/// Householder reflector I - 2vv'/(v'v) with v = e1 - w, which maps e1 to w.
/// Returns the identity when ‖e1 - w‖ < 1e-12. Deterministic in w.
SquareMatrix complete_orthogonal(const UnitVector& w);

SquareMatrix matmul(const SquareMatrix& a, const SquareMatrix& b);

/// a * b'.
SquareMatrix matmul_transposed(const SquareMatrix& a, const SquareMatrix& b);

std::vector<double> matvec(const SquareMatrix& a, std::span<const double> x);

/// a^k by repeated multiplication; a^0 = I.
SquareMatrix matrix_power(const SquareMatrix& a, int k);

/// max |(a'a - I)_ij|.
double orthogonality_defect(const SquareMatrix& a);

/// max |a_ij - b_ij|.
double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b);

}  // namespace northpole::linalg
