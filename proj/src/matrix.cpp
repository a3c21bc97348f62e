#include "leibniz/matrix.hpp"

#include <utility>

#include "leibniz/errors.hpp"

namespace leibniz {

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

bool is_zero(std::span<const Scalar> v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sum of different lengths");
  Vector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector difference of different lengths");
  Vector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vector operator*(const Scalar& s, const Vector& v) {
  Vector r(v);
  for (auto& x : r) x *= s;
  return r;
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

Matrix Matrix::diagonal(std::span<const Scalar> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::col(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_row(std::size_t r, std::span<const Scalar> v) {
  if (v.size() != cols_) throw DimensionMismatch("row length does not match column count");
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = v[c];
}

void Matrix::set_col(std::size_t c, std::span<const Scalar> v) {
  if (v.size() != rows_) throw DimensionMismatch("column length does not match row count");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const { return leibniz::is_zero(data_); }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product of non-conforming shapes");
  Matrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) r(i, j) += aik * b(k, j);
      }
    }
  }
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sum shapes");
  Matrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) += b(i, j);
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix difference shapes");
  Matrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) -= b(i, j);
  return r;
}

Matrix operator*(const Scalar& s, const Matrix& m) {
  Matrix r = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) *= s;
  return r;
}

Vector operator*(const Matrix& m, std::span<const Scalar> v) {
  if (m.cols() != v.size()) throw DimensionMismatch("matrix-vector product shapes");
  Vector r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!v[j].is_zero() && !m(i, j).is_zero()) r[i] += m(i, j) * v[j];
  return r;
}

Vector row_times(std::span<const Scalar> v, const Matrix& m) {
  if (m.rows() != v.size()) throw DimensionMismatch("vector-matrix product shapes");
  Vector r(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) r[j] += v[i] * m(i, j);
  }
  return r;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

Echelon rref(const Matrix& m) {
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t p = row;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    const Scalar inv = a(row, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, c).is_zero()) continue;
      const Scalar f = a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!a(row, j).is_zero()) a(r, j) -= f * a(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  Matrix reduced(row, a.cols());
  for (std::size_t r = 0; r < row; ++r)
    for (std::size_t j = 0; j < a.cols(); ++j) reduced(r, j) = std::move(a(r, j));
  return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Scalar determinant(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of non-square matrix");
  Matrix a = m;
  const std::size_t n = a.rows();
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    const Scalar inv = a(c, c).inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      const Scalar f = a(r, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!a(c, j).is_zero()) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw SingularMatrix("matrix is singular");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

Scalar trace(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("trace of non-square matrix");
  Scalar t;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

std::vector<Scalar> characteristic_polynomial(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("characteristic polynomial of non-square matrix");
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  const std::size_t n = m.rows();
  std::vector<Scalar> c(n + 1);
  c[n] = 1;
  Matrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    c[n - k] = -trace(m * mk) / Scalar(static_cast<long>(k));
  }
  return c;
}

bool operator_nilpotent(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("nilpotency test of non-square matrix");
  Matrix p = m;
  // Squaring reaches an exponent >= n in ceil(log2 n) steps.
  for (std::size_t e = 1; e < m.rows(); e *= 2) {
    if (p.is_zero()) return true;
    p = p * p;
  }
  return p.is_zero();
}

std::vector<Vector> Subspace::rows_of(const Matrix& m) {
  std::vector<Vector> out;
  out.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row(r));
  return out;
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  Subspace s(ambient_dim);
  if (vectors.empty()) return s;
  for (const auto& v : vectors)
    if (v.size() != ambient_dim) throw DimensionMismatch("spanning vector has wrong length");
  s.basis_ = rref(Matrix::from_rows(vectors, ambient_dim)).reduced;
  return s;
}

Subspace Subspace::whole(std::size_t ambient_dim) {
  Subspace s(ambient_dim);
  s.basis_ = Matrix::identity(ambient_dim);
  return s;
}

bool Subspace::contains(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw DimensionMismatch("vector length differs from ambient dimension");
  // Reduce v against the echelon basis: pivot entries determine the combination.
  Vector r(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    std::size_t p = 0;
    while (basis_(i, p).is_zero()) ++p;
    if (r[p].is_zero()) continue;
    const Scalar f = r[p];
    for (std::size_t j = p; j < ambient_; ++j)
      if (!basis_(i, j).is_zero()) r[j] -= f * basis_(i, j);
  }
  return leibniz::is_zero(r);
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("subspaces of different ambient spaces");
  if (other.dim() > dim()) return false;
  for (std::size_t r = 0; r < other.basis_.rows(); ++r)
    if (!contains(other.basis_.row(r))) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("subspaces of different ambient spaces");
  auto v = rows_of(basis_);
  auto w = rows_of(other.basis_);
  v.insert(v.end(), w.begin(), w.end());
  return span(ambient_, v);
}

Matrix Subspace::annihilator() const {
  if (dim() == 0) return Matrix::identity(ambient_);
  return kernel(basis_).basis();
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("subspaces of different ambient spaces");
  Matrix a = annihilator();
  Matrix b = other.annihilator();
  std::vector<Vector> rows = rows_of(a);
  auto more = rows_of(b);
  rows.insert(rows.end(), more.begin(), more.end());
  if (rows.empty()) return whole(ambient_);
  return kernel(Matrix::from_rows(rows, ambient_));
}

Subspace Subspace::image_rows(const Matrix& m) const {
  if (m.rows() != ambient_) throw DimensionMismatch("map domain differs from ambient dimension");
  std::vector<Vector> out;
  for (std::size_t r = 0; r < basis_.rows(); ++r) out.push_back(row_times(basis_.row(r), m));
  return span(m.cols(), out);
}

Subspace kernel(const Matrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return Subspace::whole(n);
  Echelon e = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n);
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return Subspace::span(n, basis);
}

}  // namespace leibniz
