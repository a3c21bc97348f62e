#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "leibniz/matrix.hpp"
#include "leibniz/scalar.hpp"

namespace leibniz {

/// Structure constants c_{ij}^k of a finite-dimensional algebra, with
/// [e_i, e_j] = sum_k c_{ij}^k e_k. Indices are 0-based in the API and
/// 1-based in the JSON interchange format.
///
/// Only nonzero coefficients are stored, sorted by (i, j, k), so two tables
/// describing the same bracket compare equal. Labels are informational and
/// do not take part in equality.
class AlgebraTable {
 public:
  struct Entry {
    std::size_t i = 0, j = 0, k = 0;
    Scalar c;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  AlgebraTable() = default;
  /// Duplicate (i, j, k) triples are summed; zero results are dropped.
  AlgebraTable(std::size_t dim, std::vector<Entry> entries, std::vector<std::string> labels = {});

  static AlgebraTable abelian(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(std::size_t i) const;

  const Scalar& coeff(std::size_t i, std::size_t j, std::size_t k) const {
    return dense_[(i * dim_ + j) * dim_ + k];
  }
  /// [e_i, e_j] in coordinates.
  Vector product(std::size_t i, std::size_t j) const;
  bool product_is_zero(std::size_t i, std::size_t j) const { return !nonzero_[i * dim_ + j]; }

  AlgebraTable with_labels(std::vector<std::string> labels) const;

  friend bool operator==(const AlgebraTable& a, const AlgebraTable& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
  std::vector<std::string> labels_;
  std::vector<Scalar> dense_;
  std::vector<bool> nonzero_;
};

/// Bilinear extension of the table: sum_{ij} u_i v_j [e_i, e_j].
Vector bracket(const AlgebraTable& a, std::span<const Scalar> u, std::span<const Scalar> v);

struct LeibnizCheck {
  bool pass = true;
  /// First failing basis triple (i, j, k) and its defect
  /// J = [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] + [[e_i,e_k],e_j].
  std::array<std::size_t, 3> witness{};
  Vector defect;
};

/// Checks the Leibniz identity on basis triples; bilinearity extends it to
/// all elements.
LeibnizCheck leibniz_check(const AlgebraTable& a);

struct LieCheck {
  bool lie = true;
  /// Basis pair (i, j) with [e_i,e_j] + [e_j,e_i] != 0 (i == j for a nonzero square).
  std::array<std::size_t, 2> witness{};
};

LieCheck is_lie(const AlgebraTable& a);

/// Table in the basis e'_i = sum_j p_ij e_j (rows of p are the new basis
/// vectors in old coordinates). Throws SingularMatrix / DimensionMismatch.
AlgebraTable change_basis(const AlgebraTable& a, const Matrix& p);

/// Span of [x, y] for x in a basis of u and y in a basis of v.
Subspace product_space(const AlgebraTable& a, const Subspace& u, const Subspace& v);

/// Operator matrix of R_x: column j is [e_j, x].
Matrix right_multiplication(const AlgebraTable& a, std::span<const Scalar> x);
/// Operator matrix of L_x: column j is [x, e_j].
Matrix left_multiplication(const AlgebraTable& a, std::span<const Scalar> x);

/// Builds the (n+1)-dimensional table N + span{x} with [e_i, x] read from
/// column i of rx, [x, e_i] = left_x[i] and [x, x] = xx. left_x and xx may be
/// given in N-coordinates (length n) or full coordinates (length n+1).
AlgebraTable assemble_extension(const AlgebraTable& n, const Matrix& rx,
                                const std::vector<Vector>& left_x, const Vector& xx);

/// Structure constants of the subalgebra spanned by the rows of `basis`
/// (which must be closed under the bracket), in that basis.
AlgebraTable restrict_to(const AlgebraTable& a, const Subspace& sub);

}  // namespace leibniz
