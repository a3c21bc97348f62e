#include "leibniz/algebra.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "leibniz/errors.hpp"

namespace leibniz {

AlgebraTable::AlgebraTable(std::size_t dim, std::vector<Entry> entries, std::vector<std::string> labels)
    : dim_(dim), labels_(std::move(labels)) {
  if (dim == 0) throw DimensionMismatch("algebra dimension must be at least 1");
  if (!labels_.empty() && labels_.size() != dim) throw DimensionMismatch("label count differs from dimension");
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Scalar> acc;
  for (auto& e : entries) {
    if (e.i >= dim || e.j >= dim || e.k >= dim) throw DimensionMismatch("structure constant index out of range");
    acc[{e.i, e.j, e.k}] += e.c;
  }
  dense_.assign(dim * dim * dim, Scalar());
  nonzero_.assign(dim * dim, false);
  for (auto& [key, c] : acc) {
    if (c.is_zero()) continue;
    auto [i, j, k] = key;
    dense_[(i * dim + j) * dim + k] = c;
    nonzero_[i * dim + j] = true;
    entries_.push_back({i, j, k, c});
  }
}

AlgebraTable AlgebraTable::abelian(std::size_t dim) { return AlgebraTable(dim, {}); }

std::string AlgebraTable::label(std::size_t i) const {
  if (i < labels_.size()) return labels_[i];
  return "e" + std::to_string(i + 1);
}

Vector AlgebraTable::product(std::size_t i, std::size_t j) const {
  Vector v(dim_);
  if (!nonzero_[i * dim_ + j]) return v;
  for (std::size_t k = 0; k < dim_; ++k) v[k] = coeff(i, j, k);
  return v;
}

AlgebraTable AlgebraTable::with_labels(std::vector<std::string> labels) const {
  return AlgebraTable(dim_, entries_, std::move(labels));
}

Vector bracket(const AlgebraTable& a, std::span<const Scalar> u, std::span<const Scalar> v) {
  const std::size_t n = a.dim();
  if (u.size() != n || v.size() != n) throw DimensionMismatch("bracket operand length differs from dimension");
  Vector r(n);
  for (const auto& e : a.entries()) {
    if (u[e.i].is_zero() || v[e.j].is_zero()) continue;
    r[e.k] += u[e.i] * v[e.j] * e.c;
  }
  return r;
}

LeibnizCheck leibniz_check(const AlgebraTable& a) {
  const std::size_t n = a.dim();
  // Cache the products and the right multiplications by basis vectors.
  std::vector<Vector> prod(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i * n + j] = a.product(i, j);
  auto bracket_vec_basis = [&](const Vector& u, std::size_t k) {
    Vector r(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i].is_zero() || a.product_is_zero(i, k)) continue;
      for (std::size_t t = 0; t < n; ++t) r[t] += u[i] * a.coeff(i, k, t);
    }
    return r;
  };
  auto bracket_basis_vec = [&](std::size_t i, const Vector& v) {
    Vector r(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j].is_zero() || a.product_is_zero(i, j)) continue;
      for (std::size_t t = 0; t < n; ++t) r[t] += v[j] * a.coeff(i, j, t);
    }
    return r;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        Vector defect = bracket_basis_vec(i, prod[j * n + k]);
        defect = defect - bracket_vec_basis(prod[i * n + j], k);
        defect = defect + bracket_vec_basis(prod[i * n + k], j);
        if (!is_zero(defect)) return {false, {i, j, k}, std::move(defect)};
      }
    }
  }
  return {};
}

LieCheck is_lie(const AlgebraTable& a) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!(a.coeff(i, j, k) + a.coeff(j, i, k)).is_zero()) return {false, {i, j}};
      }
    }
  }
  return {};
}

AlgebraTable change_basis(const AlgebraTable& a, const Matrix& p) {
  const std::size_t n = a.dim();
  if (p.rows() != n || p.cols() != n) throw DimensionMismatch("basis change matrix has wrong shape");
  const Matrix pinv = inverse(p);
  std::vector<AlgebraTable::Entry> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector ui = p.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const Vector w = bracket(a, ui, p.row(j));
      if (is_zero(w)) continue;
      const Vector c = row_times(w, pinv);
      for (std::size_t k = 0; k < n; ++k)
        if (!c[k].is_zero()) out.push_back({i, j, k, c[k]});
    }
  }
  return AlgebraTable(n, std::move(out), a.labels());
}

Subspace product_space(const AlgebraTable& a, const Subspace& u, const Subspace& v) {
  const std::size_t n = a.dim();
  if (u.ambient_dim() != n || v.ambient_dim() != n) throw DimensionMismatch("subspace ambient dimension differs from algebra");
  std::vector<Vector> out;
  const auto us = u.vectors();
  const auto vs = v.vectors();
  for (const auto& x : us)
    for (const auto& y : vs) {
      Vector w = bracket(a, x, y);
      if (!is_zero(w)) out.push_back(std::move(w));
    }
  return Subspace::span(n, out);
}

Matrix right_multiplication(const AlgebraTable& a, std::span<const Scalar> x) {
  const std::size_t n = a.dim();
  if (x.size() != n) throw DimensionMismatch("operator source has wrong length");
  Matrix m(n, n);
  for (const auto& e : a.entries())
    if (!x[e.j].is_zero()) m(e.k, e.i) += x[e.j] * e.c;
  return m;
}

Matrix left_multiplication(const AlgebraTable& a, std::span<const Scalar> x) {
  const std::size_t n = a.dim();
  if (x.size() != n) throw DimensionMismatch("operator source has wrong length");
  Matrix m(n, n);
  for (const auto& e : a.entries())
    if (!x[e.i].is_zero()) m(e.k, e.j) += x[e.i] * e.c;
  return m;
}

AlgebraTable assemble_extension(const AlgebraTable& n, const Matrix& rx,
                                const std::vector<Vector>& left_x, const Vector& xx) {
  const std::size_t m = n.dim();
  const std::size_t x = m;
  if (rx.rows() != m || rx.cols() != m) throw DimensionMismatch("rx must be dim(N) x dim(N)");
  if (left_x.size() != m) throw DimensionMismatch("left_x must have one vector per basis element of N");
  auto check_len = [&](const Vector& v) {
    if (v.size() != m && v.size() != m + 1) throw DimensionMismatch("extension vector has wrong length");
  };
  std::vector<AlgebraTable::Entry> out;
  for (const auto& e : n.entries()) out.push_back(e);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      if (!rx(k, i).is_zero()) out.push_back({i, x, k, rx(k, i)});
  for (std::size_t i = 0; i < m; ++i) {
    check_len(left_x[i]);
    for (std::size_t k = 0; k < left_x[i].size(); ++k)
      if (!left_x[i][k].is_zero()) out.push_back({x, i, k, left_x[i][k]});
  }
  check_len(xx);
  for (std::size_t k = 0; k < xx.size(); ++k)
    if (!xx[k].is_zero()) out.push_back({x, x, k, xx[k]});
  std::vector<std::string> labels;
  if (!n.labels().empty()) {
    labels = n.labels();
    labels.push_back("x");
  }
  return AlgebraTable(m + 1, std::move(out), std::move(labels));
}

AlgebraTable restrict_to(const AlgebraTable& a, const Subspace& sub) {
  const std::size_t d = sub.dim();
  if (d == 0) throw DimensionMismatch("cannot restrict to the zero subspace");
  const auto basis = sub.vectors();
  // Coordinates in the echelon basis are read off at the pivot columns.
  std::vector<std::size_t> pivots;
  for (const auto& b : basis) {
    std::size_t p = 0;
    while (b[p].is_zero()) ++p;
    pivots.push_back(p);
  }
  std::vector<AlgebraTable::Entry> out;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Vector w = bracket(a, basis[i], basis[j]);
      if (is_zero(w)) continue;
      if (!sub.contains(w)) throw DimensionMismatch("subspace is not closed under the bracket");
      for (std::size_t k = 0; k < d; ++k)
        if (!w[pivots[k]].is_zero()) out.push_back({i, j, k, w[pivots[k]]});
    }
  }
  return AlgebraTable(d, std::move(out));
}

}  // namespace leibniz
