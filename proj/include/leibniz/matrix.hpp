#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "leibniz/scalar.hpp"

namespace leibniz {

using Vector = std::vector<Scalar>;

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(std::span<const Scalar> v);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Scalar& s, const Vector& v);

/// Dense row-major matrix over Q(i). Shape is fixed at construction.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix diagonal(std::span<const Scalar> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;
  void set_row(std::size_t r, std::span<const Scalar> v);
  void set_col(std::size_t c, std::span<const Scalar> v);

  Matrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Scalar& s, const Matrix& m);
/// m * v for a column vector v.
Vector operator*(const Matrix& m, std::span<const Scalar> v);
/// Row vector times matrix.
Vector row_times(std::span<const Scalar> v, const Matrix& m);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// Result of Gauss-Jordan elimination: the reduced row-echelon form with
/// zero rows removed and the pivot column of each remaining row.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
Scalar determinant(const Matrix& m);
/// Throws SingularMatrix when m is not invertible.
Matrix inverse(const Matrix& m);
/// Coefficients c[0..n] (ascending, c[n] = 1) of det(t I - m).
std::vector<Scalar> characteristic_polynomial(const Matrix& m);
/// True iff m^n = 0 for n = m.rows().
bool operator_nilpotent(const Matrix& m);
Scalar trace(const Matrix& m);

/// A subspace of Q(i)^n stored by its reduced row-echelon basis. Two equal
/// subspaces always hold identical bases.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors);
  static Subspace whole(std::size_t ambient_dim);
  static Subspace of_rows(const Matrix& m) { return span(m.cols(), rows_of(m)); }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  const Matrix& basis() const { return basis_; }
  std::vector<Vector> vectors() const { return rows_of(basis_); }

  bool contains(std::span<const Scalar> v) const;
  bool contains(const Subspace& other) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// Basis (as rows) of the linear functionals vanishing on this subspace.
  Matrix annihilator() const;
  /// Image under v -> v * m (m maps row vectors of this ambient space).
  Subspace image_rows(const Matrix& m) const;

  friend bool operator==(const Subspace& a, const Subspace& b) = default;

 private:
  static std::vector<Vector> rows_of(const Matrix& m);

  std::size_t ambient_ = 0;
  Matrix basis_;
};

/// Null space {v : m v = 0} in canonical form; dim + rank(m) = m.cols().
Subspace kernel(const Matrix& m);

}  // namespace leibniz
