#include "leibniz/structure.hpp"

#include <algorithm>
#include <random>

#include "leibniz/errors.hpp"

namespace leibniz {

namespace {

SeriesProfile run_series(const AlgebraTable& a, SeriesKind kind) {
  SeriesProfile out;
  out.kind = kind;
  const Subspace whole = Subspace::whole(a.dim());
  Subspace cur = whole;
  out.terms.push_back(cur);
  out.dims.push_back(cur.dim());
  if (cur.dim() == 0) {
    out.index = 1;
    return out;
  }
  while (true) {
    Subspace next = kind == SeriesKind::LowerCentral ? product_space(a, cur, whole) : product_space(a, cur, cur);
    out.dims.push_back(next.dim());
    out.terms.push_back(next);
    if (next.dim() == 0) {
      out.index = out.dims.size();
      return out;
    }
    if (next.dim() == cur.dim()) return out;
    cur = std::move(next);
  }
}

}  // namespace

SeriesProfile lower_central_series(const AlgebraTable& a) { return run_series(a, SeriesKind::LowerCentral); }
SeriesProfile derived_series(const AlgebraTable& a) { return run_series(a, SeriesKind::Derived); }
bool is_nilpotent_algebra(const AlgebraTable& a) { return lower_central_series(a).index.has_value(); }
bool is_solvable(const AlgebraTable& a) { return derived_series(a).index.has_value(); }

Subspace right_annihilator(const AlgebraTable& a) {
  const std::size_t n = a.dim();
  Matrix m(n * n, n);
  for (const auto& e : a.entries()) m(e.i * n + e.k, e.j) = e.c;
  return kernel(m);
}

Subspace left_annihilator(const AlgebraTable& a) {
  const std::size_t n = a.dim();
  Matrix m(n * n, n);
  for (const auto& e : a.entries()) m(e.j * n + e.k, e.i) = e.c;
  return kernel(m);
}

Subspace center(const AlgebraTable& a) { return right_annihilator(a).intersect(left_annihilator(a)); }

bool is_ideal(const AlgebraTable& a, const Subspace& s) {
  const Subspace whole = Subspace::whole(a.dim());
  return s.contains(product_space(a, s, whole)) && s.contains(product_space(a, whole, s));
}

Subspace nilradical(const AlgebraTable& a) {
  if (!is_solvable(a)) throw NotSolvable("nilradical requires a solvable algebra");
  const std::size_t n = a.dim();
  if (n == 0) return Subspace(0);
  std::vector<Matrix> gens;
  for (std::size_t j = 0; j < n; ++j) gens.push_back(right_multiplication(a, unit_vector(n, j)));

  // Associative algebra with identity generated by the R_{e_j}, as a span of
  // flattened matrices, closed by repeated multiplication.
  auto flatten = [n](const Matrix& m) {
    Vector v(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) v[r * n + c] = m(r, c);
    return v;
  };
  std::vector<Matrix> span_basis{Matrix::identity(n)};
  Subspace span = Subspace::span(n * n, {flatten(span_basis[0])});
  for (std::size_t head = 0; head < span_basis.size(); ++head) {
    for (const auto& g : gens) {
      Matrix prod = span_basis[head] * g;
      Vector v = flatten(prod);
      if (span.contains(v)) continue;
      span = span.sum(Subspace::span(n * n, {v}));
      span_basis.push_back(std::move(prod));
    }
  }

  // W = {x : tr(R_x M) = 0 for every M in that algebra}. By Lie's theorem
  // applied to the solvable operator algebra R(L), this is {x : R_x nilpotent}.
  Matrix constraints(span_basis.size(), n);
  for (std::size_t r = 0; r < span_basis.size(); ++r)
    for (std::size_t j = 0; j < n; ++j) constraints(r, j) = trace(gens[j] * span_basis[r]);
  Subspace w = kernel(constraints);

  const Subspace whole = Subspace::whole(n);
  if (!w.contains(product_space(a, whole, whole)) || !is_ideal(a, w) ||
      !is_nilpotent_algebra(restrict_to(a, w))) {
    throw NilradicalUndetermined("nilradical candidate failed certification");
  }
  return w;
}

DerivationSpace derivation_space(const AlgebraTable& a) {
  const std::size_t n = a.dim();
  // Unknown d_{rc} (row r, column c) sits at index r * n + c.
  Matrix m(n * n * n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t t = 0; t < n; ++t) {
        const std::size_t row = (i * n + j) * n + t;
        for (std::size_t k = 0; k < n; ++k) {
          // d([e_i,e_j]) - [d e_i, e_j] - [e_i, d e_j], component t.
          const Scalar& c = a.coeff(i, j, k);
          if (!c.is_zero()) m(row, t * n + k) += c;
          const Scalar& l = a.coeff(k, j, t);
          if (!l.is_zero()) m(row, k * n + i) -= l;
          const Scalar& r = a.coeff(i, k, t);
          if (!r.is_zero()) m(row, k * n + j) -= r;
        }
      }
    }
  }
  const Subspace ker = kernel(m);
  DerivationSpace out;
  out.algebra_dim = n;
  for (const auto& v : ker.vectors()) {
    Matrix d(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) d(r, c) = v[r * n + c];
    out.basis.push_back(std::move(d));
  }
  return out;
}

bool is_derivation(const AlgebraTable& a, const Matrix& d) {
  const std::size_t n = a.dim();
  if (d.rows() != n || d.cols() != n) throw DimensionMismatch("derivation matrix has the wrong shape");
  for (std::size_t i = 0; i < n; ++i) {
    const Vector di = d.col(i);
    for (std::size_t j = 0; j < n; ++j) {
      const Vector lhs = d * a.product(i, j);
      const Vector rhs = bracket(a, di, unit_vector(n, j)) + bracket(a, unit_vector(n, i), d.col(j));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

std::vector<Poly> characteristic_polynomial(const std::vector<std::vector<Poly>>& a) {
  const std::size_t n = a.size();
  using PMatrix = std::vector<std::vector<Poly>>;
  auto mul = [n](const PMatrix& x, const PMatrix& y) {
    PMatrix z(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (x[i][k].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!y[k][j].is_zero()) z[i][j] += x[i][k] * y[k][j];
      }
    return z;
  };
  std::vector<Poly> c(n + 1);
  c[n] = Poly(1);
  PMatrix m(n, std::vector<Poly>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
    PMatrix next = mul(a, m);
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    m = std::move(next);
    const PMatrix am = mul(a, m);
    Poly tr;
    for (std::size_t i = 0; i < n; ++i) tr += am[i][i];
    c[n - k] = tr * Scalar(mpq_class(-1, static_cast<long>(k)));
  }
  return c;
}

namespace {

Matrix combination(const std::vector<Matrix>& ds, const std::vector<Scalar>& s) {
  Matrix m(ds[0].rows(), ds[0].cols());
  for (std::size_t k = 0; k < ds.size(); ++k)
    if (!s[k].is_zero()) m = m + s[k] * ds[k];
  return m;
}

// Newton interpolation through (x_k, y_k), returning ascending coefficients.
UPoly interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
  const std::size_t m = xs.size();
  std::vector<Scalar> dd = ys;
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t k = m - 1; k >= level; --k) dd[k] = (dd[k] - dd[k - 1]) / (xs[k] - xs[k - level]);
  UPoly out{dd[m - 1]};
  for (std::size_t k = m - 1; k-- > 0;) {
    // out = out * (t - x_k) + dd[k]
    UPoly next(out.size() + 1);
    for (std::size_t j = 0; j < out.size(); ++j) {
      next[j + 1] += out[j];
      next[j] -= out[j] * xs[k];
    }
    next[0] += dd[k];
    out = std::move(next);
  }
  upoly::trim(out);
  return out;
}

}  // namespace

NilIndependence nil_independent_check(const std::vector<Matrix>& ds, std::uint64_t seed, std::size_t budget) {
  NilIndependence out;
  if (ds.empty()) {
    out.verdict = NilVerdict::Verified;
    return out;
  }
  const std::size_t n = ds[0].rows();
  for (const auto& d : ds)
    if (d.rows() != n || d.cols() != n) throw DimensionMismatch("nil-independence needs square matrices of one size");
  const std::size_t m = ds.size();

  if (m == 1) {
    if (operator_nilpotent(ds[0])) {
      out.verdict = NilVerdict::Refuted;
      out.witness = {Scalar(1)};
    } else {
      out.verdict = NilVerdict::Verified;
    }
    return out;
  }

  if (m == 2) {
    if (operator_nilpotent(ds[0])) {
      out.verdict = NilVerdict::Refuted;
      out.witness = {Scalar(1), Scalar(0)};
      return out;
    }
    // Remaining combinations are s D1 + D2; c_k(s) has degree <= n in s.
    std::vector<Scalar> xs;
    std::vector<std::vector<Scalar>> values(n);
    for (std::size_t p = 0; p <= n; ++p) {
      const Scalar s(static_cast<long>(p));
      xs.push_back(s);
      const auto cp = characteristic_polynomial(combination(ds, {s, Scalar(1)}));
      for (std::size_t k = 0; k < n; ++k) values[k].push_back(cp[k]);
    }
    UPoly g;
    for (std::size_t k = 0; k < n; ++k) g = upoly::gcd(g, interpolate(xs, values[k]));
    if (g.empty()) {
      out.verdict = NilVerdict::Refuted;
      out.witness = {Scalar(0), Scalar(1)};
      return out;
    }
    if (upoly::degree(g) == 0) {
      out.verdict = NilVerdict::Verified;
      return out;
    }
    out.verdict = NilVerdict::Refuted;
    const auto r = upoly::roots(g);
    if (!r.roots.empty()) out.witness = {r.roots[0], Scalar(1)};
    return out;
  }

  // Three or more: random falsification, then elimination per dehomogenized chart.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-4, 4);
  for (int trial = 0; trial < 64; ++trial) {
    std::vector<Scalar> s(m);
    bool nonzero = false;
    for (auto& x : s) {
      x = Scalar(dist(rng));
      nonzero = nonzero || !x.is_zero();
    }
    if (nonzero && operator_nilpotent(combination(ds, s))) {
      out.verdict = NilVerdict::Refuted;
      out.witness = s;
      return out;
    }
  }
  bool all_exhaustive = true;
  for (std::size_t lead = 0; lead < m; ++lead) {
    // s_j = 0 for j < lead, s_lead = 1, unknowns for j > lead.
    std::vector<std::vector<Poly>> pm(n, std::vector<Poly>(n));
    for (std::size_t j = lead; j < m; ++j) {
      const Poly coef = j == lead ? Poly(1) : Poly::var(j - lead - 1);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (!ds[j](r, c).is_zero()) pm[r][c] += coef * ds[j](r, c);
    }
    PolySystem sys;
    sys.nvars = m - lead - 1;
    const auto cp = characteristic_polynomial(pm);
    for (std::size_t k = 0; k < n; ++k) sys.equations.push_back(cp[k]);
    SolverOptions opt;
    opt.budget = budget;
    opt.seed = seed;
    const auto res = solve(sys, opt);
    if (res.status == SolveStatus::Found) {
      out.verdict = NilVerdict::Refuted;
      out.witness.assign(m, Scalar(0));
      out.witness[lead] = Scalar(1);
      for (std::size_t j = lead + 1; j < m; ++j) out.witness[j] = res.solutions[0][j - lead - 1];
      return out;
    }
    if (!res.exhaustive) all_exhaustive = false;
  }
  out.verdict = all_exhaustive ? NilVerdict::Verified : NilVerdict::Unknown;
  return out;
}

MaxNilIndependent max_nil_independent(const AlgebraTable& a, std::size_t budget, std::uint64_t seed) {
  MaxNilIndependent out;
  const std::size_t n = a.dim();
  const DerivationSpace der = derivation_space(a);
  const std::size_t k = der.dim();

  // Subspaces of nilpotent matrices meet any nil-independent span trivially.
  auto flatten = [n](const Matrix& m) {
    Vector v(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) v[r * n + c] = m(r, c);
    return v;
  };
  std::vector<Vector> flat;
  for (const auto& d : der.basis) flat.push_back(flatten(d));
  const Subspace der_span = Subspace::span(n * n, flat);
  auto triangular = [n](bool upper) {
    std::vector<Vector> vs;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (upper ? c > r : c < r) vs.push_back(unit_vector(n * n, r * n + c));
    return Subspace::span(n * n, vs);
  };
  std::size_t upper = std::min(n, k);
  upper = std::min(upper, k - der_span.intersect(triangular(true)).dim());
  upper = std::min(upper, k - der_span.intersect(triangular(false)).dim());

  // Subsets of the echelon basis, largest first.
  std::vector<std::size_t> idx;
  bool refuted_full_space = false;
  for (std::size_t size = upper; size >= 1 && out.lower_bound == 0; --size) {
    std::vector<bool> pick(k, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
    do {
      std::vector<Matrix> subset;
      for (std::size_t j = 0; j < k; ++j)
        if (pick[j]) subset.push_back(der.basis[j]);
      const auto res = nil_independent_check(subset, seed, budget);
      if (res.verdict == NilVerdict::Verified) {
        out.lower_bound = size;
        out.certificate = std::move(subset);
        break;
      }
      if (size == k && res.verdict == NilVerdict::Refuted) refuted_full_space = true;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (size == 1) break;
  }
  // Nil-independence depends only on the span, so a refuted full space caps the count.
  if (refuted_full_space && upper == k && k > 0) upper = k - 1;
  out.upper_bound = upper;
  out.exact = out.lower_bound == out.upper_bound;
  return out;
}

}  // namespace leibniz
