#include "leibniz/iso.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "leibniz/errors.hpp"
#include "leibniz/structure.hpp"

namespace leibniz {

namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
  return out;
}

std::vector<std::size_t> pivots_of(const Subspace& s) {
  std::vector<std::size_t> out;
  const Matrix& b = s.basis();
  for (std::size_t r = 0; r < b.rows(); ++r) {
    std::size_t c = 0;
    while (c < b.cols() && b(r, c).is_zero()) ++c;
    out.push_back(c);
  }
  return out;
}

// Matrix of the operator `op` (column convention) restricted to the invariant
// subspace s, in the echelon basis of s.
Matrix restrict_operator(const Matrix& op, const Subspace& s) {
  const auto piv = pivots_of(s);
  const std::size_t d = s.dim();
  Matrix out(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const Vector img = op * s.basis().row(j);
    for (std::size_t r = 0; r < d; ++r) out(r, j) = img[piv[r]];
  }
  return out;
}

std::vector<std::size_t> complement_indices(const Subspace& s) {
  std::vector<std::size_t> out;
  Subspace cur = s;
  for (std::size_t j = 0; j < s.ambient_dim(); ++j) {
    const Vector e = unit_vector(s.ambient_dim(), j);
    if (cur.contains(e)) continue;
    cur = cur.sum(Subspace::span(s.ambient_dim(), {e}));
    out.push_back(j);
  }
  return out;
}

using PolyMatrix = std::vector<std::vector<Poly>>;

Poly poly_det(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return Poly(1);
  if (n == 1) return m[0][0];
  Poly out;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    Poly term = m[0][c] * poly_det(minor);
    if (c % 2) out -= term;
    else out += term;
  }
  return out;
}

// Basis of big modulo small, with coordinates of vectors of big in it.
struct QuotientBasis {
  std::vector<Vector> basis;
  std::vector<Vector> small;
  std::size_t n = 0;

  QuotientBasis(const Subspace& big, const Subspace& low) : small(low.vectors()), n(big.ambient_dim()) {
    Subspace acc = low;
    for (const auto& v : big.vectors()) {
      if (acc.contains(v)) continue;
      acc = acc.sum(Subspace::span(n, {v}));
      basis.push_back(v);
    }
  }

  std::vector<Scalar> coords(const Vector& v) const {
    const std::size_t d = basis.size();
    const std::size_t m = d + small.size();
    Matrix aug(n, m + 1);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < d; ++c) aug(r, c) = basis[c][r];
      for (std::size_t c = d; c < m; ++c) aug(r, c) = small[c - d][r];
      aug(r, m) = v[r];
    }
    const Echelon e = rref(aug);
    std::vector<Scalar> out(d);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      if (e.pivots[r] < d) out[e.pivots[r]] = e.reduced(r, m);
    return out;
  }
};

// Left and right multiplication by x induce maps N/L^2 -> L^2/W with
// W = [L^2,L] + [L,L^2] + [N,N]; neither depends on the choice of x outside N
// beyond a common scale. Records the ranks and the points where the pencil
// L_x - t R_x loses rank.
std::string pencil_invariant(const AlgebraTable& a, const Subspace& nil, const Subspace& sq) {
  const std::size_t n = a.dim();
  if (nil.dim() + 1 != n) return "";
  const Subspace whole = Subspace::whole(n);
  const Subspace w =
      product_space(a, sq, whole).sum(product_space(a, whole, sq)).sum(product_space(a, nil, nil));
  const QuotientBasis src(nil, sq), dst(sq, w);
  const std::size_t p = src.basis.size(), q = dst.basis.size();
  if (p == 0 || q == 0) return "";
  const Vector x = unit_vector(n, complement_indices(nil)[0]);
  const Matrix lx = left_multiplication(a, x), rx = right_multiplication(a, x);
  Matrix lm(q, p), rm(q, p);
  for (std::size_t j = 0; j < p; ++j) {
    const auto lc = dst.coords(lx * src.basis[j]);
    const auto rc = dst.coords(rx * src.basis[j]);
    for (std::size_t i = 0; i < q; ++i) {
      lm(i, j) = lc[i];
      rm(i, j) = rc[i];
    }
  }
  const std::size_t rl = rank(lm), rr = rank(rm);
  std::string out = "L=" + std::to_string(rl) + ";R=" + std::to_string(rr);
  // Generic rank and the gcd of its minors, as polynomials in t.
  const Poly t = Poly::var(0);
  std::size_t generic = 0;
  UPoly g;
  for (std::size_t r = std::min(p, q); r >= 1 && generic == 0; --r) {
    std::vector<bool> rsel(q, false), csel(p, false);
    std::fill(rsel.begin(), rsel.begin() + r, true);
    UPoly acc;
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + r, true);
      do {
        PolyMatrix m;
        for (std::size_t i = 0; i < q; ++i) {
          if (!rsel[i]) continue;
          std::vector<Poly> row;
          for (std::size_t j = 0; j < p; ++j)
            if (csel[j]) row.push_back(Poly(lm(i, j)) - t * Poly(rm(i, j)));
          m.push_back(std::move(row));
        }
        const UPoly d = upoly::from_poly(poly_det(m), 0);
        if (upoly::degree(d) >= 0) acc = acc.empty() ? d : upoly::gcd(acc, d);
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (!acc.empty()) {
      generic = r;
      g = acc;
    }
  }
  out += ";generic=" + std::to_string(generic);
  if (generic == 0 || upoly::degree(g) <= 0) return out;
  // Multiplicities from repeated division.
  const auto rs = upoly::roots(g);
  std::vector<std::string> parts;
  for (const auto& mu : rs.roots) {
    std::size_t mult = 0;
    UPoly h = g;
    const UPoly lin{-mu, Scalar(1)};
    while (upoly::degree(h) > 0) {
      auto [quo, rem] = upoly::divmod(h, lin);
      upoly::trim(rem);
      if (upoly::degree(rem) >= 0) break;
      h = quo;
      ++mult;
    }
    parts.push_back(mu.str() + "^" + std::to_string(mult));
  }
  std::sort(parts.begin(), parts.end());
  if (!rs.all_found) parts.push_back("irrational");
  out += ";roots=";
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "," : "") + parts[k];
  return out;
}

std::string spectrum_invariant(const AlgebraTable& a, const Subspace& nil) {
  const std::size_t n = a.dim();
  if (nil.dim() + 1 != n) return "";
  const auto comp = complement_indices(nil);
  const Matrix m = restrict_operator(right_multiplication(a, unit_vector(n, comp[0])), nil);
  const auto cp = characteristic_polynomial(m);
  const std::size_t d = nil.dim();
  // a_k multiplies t^(d-k); rescaling x by c multiplies a_k by c^k.
  std::size_t k0 = 0;
  for (std::size_t k = 1; k <= d; ++k)
    if (!cp[d - k].is_zero()) {
      k0 = k;
      break;
    }
  if (k0 == 0) return "nilpotent";
  const Scalar& base = cp[d - k0];
  std::string out = "k0=" + std::to_string(k0);
  for (std::size_t k = 1; k <= d; ++k) {
    const Scalar& ak = cp[d - k];
    out += ";";
    if (ak.is_zero()) {
      out += "0";
      continue;
    }
    Scalar num(1), den(1);
    for (std::size_t e = 0; e < k0; ++e) num *= ak;
    for (std::size_t e = 0; e < k; ++e) den *= base;
    out += (num / den).str();
  }
  return out;
}

struct SquareForm {
  Matrix b;
  std::size_t rank = 0, sym_rank = 0, alt_rank = 0;
};

// The bracket form L/L^2 x L/L^2 -> L^2 when L^2 is one-dimensional and central.
std::optional<SquareForm> square_form(const AlgebraTable& a) {
  const std::size_t n = a.dim();
  const Subspace whole = Subspace::whole(n);
  const Subspace sq = product_space(a, whole, whole);
  if (sq.dim() != 1 || !center(a).contains(sq)) return std::nullopt;
  const std::size_t p = pivots_of(sq)[0];
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < n; ++j)
    if (j != p) idx.push_back(j);
  SquareForm f;
  f.b = Matrix(idx.size(), idx.size());
  for (std::size_t u = 0; u < idx.size(); ++u)
    for (std::size_t v = 0; v < idx.size(); ++v) f.b(u, v) = a.coeff(idx[u], idx[v], p);
  f.rank = rank(f.b);
  f.sym_rank = rank(f.b + f.b.transpose());
  f.alt_rank = rank(f.b - f.b.transpose());
  return f;
}

std::string square_form_invariant(const AlgebraTable& a) {
  const auto f = square_form(a);
  if (!f) return "";
  std::string out = "rank=" + std::to_string(f->rank) + ";sym=" + std::to_string(f->sym_rank) +
                    ";alt=" + std::to_string(f->alt_rank);
  if (f->rank == f->b.rows()) {
    const auto cp = characteristic_polynomial(inverse(f->b) * f->b.transpose());
    out += ";cosquare=";
    for (std::size_t k = 0; k < cp.size(); ++k) out += (k ? "," : "") + cp[k].str();
  }
  return out;
}

Subspace squares(const AlgebraTable& a) {
  const std::size_t n = a.dim();
  std::vector<Vector> vs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) vs.push_back(i == j ? a.product(i, i) : a.product(i, j) + a.product(j, i));
  return Subspace::span(n, vs);
}

// {u : [u,v] + sign [v,u] = 0 for all v}.
Subspace form_radical(const AlgebraTable& a, const Scalar& sign) {
  const std::size_t n = a.dim();
  Matrix m(n * n, n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t u = 0; u < n; ++u) m(v * n + k, u) = a.coeff(u, v, k) + sign * a.coeff(v, u, k);
  return kernel(m);
}

// Rank profiles of (M - mu)^j for each eigenvalue of the operator induced by
// R_x on every quotient N^k / N^(k+1). Scaling x scales M and mu together,
// and R_n (n in N) maps N^k into N^(k+1), so the profiles are invariant.
std::string jordan_invariant(const AlgebraTable& a, const Subspace& nil) {
  const std::size_t n = a.dim();
  if (nil.dim() + 1 != n) return "";
  const Matrix rx = right_multiplication(a, unit_vector(n, complement_indices(nil)[0]));
  std::vector<Subspace> chain{nil};
  while (chain.back().dim() > 0) {
    const Subspace next = product_space(a, chain.back(), nil);
    if (next.dim() == chain.back().dim()) break;
    chain.push_back(next);
  }
  std::string out;
  for (std::size_t level = 0; level + 1 < chain.size(); ++level) {
    const Subspace& top = chain[level];
    const Subspace& low = chain[level + 1];
    // Basis of top modulo low: echelon vectors of top not already in low + span.
    std::vector<Vector> basis;
    Subspace acc = low;
    for (const auto& v : top.vectors()) {
      if (acc.contains(v)) continue;
      acc = acc.sum(Subspace::span(n, {v}));
      basis.push_back(v);
    }
    const std::size_t d = basis.size();
    // Coordinates modulo low: solve against [basis; low basis].
    std::vector<Vector> rows = basis;
    for (const auto& v : low.vectors()) rows.push_back(v);
    const Matrix stacked = Matrix::from_rows(rows, n);
    const Matrix st = stacked.transpose();
    Matrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      const Vector img = rx * basis[j];
      // Solve st * c = img; the first d coordinates give the induced map.
      Matrix aug(n, rows.size() + 1);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < rows.size(); ++c) aug(r, c) = st(r, c);
        aug(r, rows.size()) = img[r];
      }
      const Echelon e = rref(aug);
      for (std::size_t r = 0; r < e.pivots.size(); ++r)
        if (e.pivots[r] < d) m(e.pivots[r], j) = e.reduced(r, rows.size());
    }
    const auto cp = characteristic_polynomial(m);
    const auto rs = upoly::roots(cp);
    std::vector<std::string> parts;
    for (const auto& mu : rs.roots) {
      Matrix shifted = m;
      for (std::size_t k = 0; k < d; ++k) shifted(k, k) -= mu;
      std::string profile;
      Matrix power = Matrix::identity(d);
      std::size_t prev = d;
      for (std::size_t j = 1; j <= d; ++j) {
        power = power * shifted;
        const std::size_t r = rank(power);
        profile += (profile.empty() ? "" : ",") + std::to_string(r);
        if (r == prev) break;
        prev = r;
      }
      parts.push_back(profile);
    }
    std::sort(parts.begin(), parts.end());
    if (!rs.all_found) parts.push_back("irrational");
    out += (level ? "|" : "");
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? ";" : "") + parts[k];
  }
  return out;
}

// Characteristic polynomials of R_x on ideals inside a codimension-one
// nilradical, normalized with the same scale as the spectrum. By Lie's theorem
// R_(cx+n) has eigenvalues c times those of R_x on every ideal.
std::string ideal_spectra(const AlgebraTable& a, const Subspace& nil,
                          const std::vector<std::pair<std::string, Subspace>>& ideals) {
  const std::size_t n = a.dim();
  if (nil.dim() + 1 != n) return "";
  const Matrix rx = right_multiplication(a, unit_vector(n, complement_indices(nil)[0]));
  const auto full = characteristic_polynomial(restrict_operator(rx, nil));
  const std::size_t d = nil.dim();
  std::size_t k0 = 0;
  for (std::size_t k = 1; k <= d && !k0; ++k)
    if (!full[d - k].is_zero()) k0 = k;
  if (k0 == 0) return "";
  const Scalar& base = full[d - k0];
  std::string out;
  for (const auto& [name, s] : ideals) {
    if (s.dim() == 0) continue;
    const auto cp = characteristic_polynomial(restrict_operator(rx, s));
    const std::size_t e = s.dim();
    out += (out.empty() ? "" : ";") + name + "=";
    for (std::size_t k = 1; k <= e; ++k) {
      const Scalar& ak = cp[e - k];
      Scalar num(1), den(1);
      for (std::size_t t = 0; t < k0; ++t) num *= ak;
      for (std::size_t t = 0; t < k; ++t) den *= base;
      out += (k > 1 ? "," : "") + (num / den).str();
    }
  }
  return out;
}

// Structure constants of L / I on the non-pivot coordinates of I.
AlgebraTable quotient_table(const AlgebraTable& a, const Subspace& ideal) {
  const std::size_t n = a.dim();
  const auto piv = pivots_of(ideal);
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < n; ++j)
    if (std::find(piv.begin(), piv.end(), j) == piv.end()) keep.push_back(j);
  const auto rows = ideal.vectors();
  std::vector<AlgebraTable::Entry> out;
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) {
      Vector w = a.product(keep[i], keep[j]);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const Scalar c = w[piv[r]];
        if (c.is_zero()) continue;
        for (std::size_t t = 0; t < n; ++t) w[t] -= c * rows[r][t];
      }
      for (std::size_t k = 0; k < keep.size(); ++k)
        if (!w[keep[k]].is_zero()) out.push_back({i, j, k, w[keep[k]]});
    }
  return AlgebraTable(keep.size(), std::move(out));
}

}  // namespace

std::vector<std::pair<std::string, std::string>> Fingerprint::components() const {
  std::vector<std::pair<std::string, std::string>> out{
      {"dim", std::to_string(dim)},
      {"lower_central", join(lower_central)},
      {"derived", join(derived)},
      {"dim L^2", std::to_string(square_dim)},
      {"dim right_annihilator", std::to_string(right_annihilator_dim)},
      {"dim derivation_space", std::to_string(derivation_dim)},
      {"is_lie", lie ? "true" : "false"},
      {"nilradical dim", nilradical_dim ? std::to_string(*nilradical_dim) : "none"},
      {"dim L^2 cap right_annihilator", std::to_string(square_cap_right_annihilator_dim)},
      {"dim left_annihilator", std::to_string(left_annihilator_dim)},
      {"dim center", std::to_string(center_dim)},
      {"dim squares", std::to_string(squares_dim)},
      {"dim symmetric_radical", std::to_string(symmetric_radical_dim)},
      {"dim antisymmetric_radical", std::to_string(antisymmetric_radical_dim)},
      {"spectrum", spectrum},
      {"jordan", jordan},
      {"square_form", square_form},
      {"ideal_spectra", ideal_spectra},
      {"pencil", pencil},
  };
  if (nilradical)
    for (auto& [k, v] : nilradical->components()) out.emplace_back("nilradical." + k, v);
  if (stable_quotient)
    for (auto& [k, v] : stable_quotient->components()) out.emplace_back("stable_quotient." + k, v);
  return out;
}

Fingerprint fingerprint(const AlgebraTable& a) {
  Fingerprint f;
  const std::size_t n = a.dim();
  f.dim = n;
  const auto lcs = lower_central_series(a);
  const auto ds = derived_series(a);
  f.lower_central = lcs.dims;
  f.derived = ds.dims;
  const Subspace sq = lcs.terms.size() > 1 ? lcs.terms[1] : Subspace(n);
  f.square_dim = sq.dim();
  const Subspace ra = right_annihilator(a);
  f.right_annihilator_dim = ra.dim();
  f.derivation_dim = derivation_space(a).dim();
  f.lie = is_lie(a).lie;
  f.square_cap_right_annihilator_dim = sq.intersect(ra).dim();
  const Subspace la = left_annihilator(a);
  f.left_annihilator_dim = la.dim();
  f.center_dim = ra.intersect(la).dim();
  f.square_form = square_form_invariant(a);
  f.squares_dim = squares(a).dim();
  f.symmetric_radical_dim = form_radical(a, Scalar(1)).dim();
  f.antisymmetric_radical_dim = form_radical(a, Scalar(-1)).dim();
  if (ds.index) {
    const Subspace nil = nilradical(a);
    f.nilradical_dim = nil.dim();
    f.spectrum = spectrum_invariant(a, nil);
    f.jordan = jordan_invariant(a, nil);
    f.pencil = pencil_invariant(a, nil, sq);
    const Subspace stable = lcs.terms.back();
    f.ideal_spectra = ideal_spectra(a, nil, {{"L^2", sq}, {"right_annihilator", ra}, {"squares", squares(a)},
                                             {"stable", stable}, {"center", ra.intersect(la)}});
    if (stable.dim() > 0 && stable.dim() < n)
      f.stable_quotient = std::make_shared<const Fingerprint>(fingerprint(quotient_table(a, stable)));
    if (nil.dim() < n && nil.dim() > 0)
      f.nilradical = std::make_shared<const Fingerprint>(fingerprint(restrict_to(a, nil)));
  }
  return f;
}

std::optional<std::string> first_difference(const Fingerprint& a, const Fingerprint& b) {
  const auto ca = a.components();
  const auto cb = b.components();
  const std::size_t m = std::min(ca.size(), cb.size());
  for (std::size_t k = 0; k < m; ++k)
    if (ca[k] != cb[k]) return ca[k].first;
  if (ca.size() != cb.size()) return std::string("nilradical");
  return std::nullopt;
}

bool verify_isomorphism(const AlgebraTable& a, const AlgebraTable& b, const Matrix& p) {
  if (a.dim() != b.dim()) throw DimensionMismatch("isomorphism between algebras of different dimension");
  return change_basis(a, p) == b;
}

namespace {

// Rows: a basis adapted to the increasing chain of subspaces.
Matrix adapted_basis(std::size_t n, const std::vector<Subspace>& chain) {
  std::vector<Vector> rows;
  Subspace cur(n);
  auto add = [&](const Vector& v) {
    if (cur.contains(v)) return;
    cur = cur.sum(Subspace::span(n, {v}));
    rows.push_back(v);
  };
  for (const auto& s : chain)
    for (const auto& v : s.vectors()) add(v);
  for (std::size_t j = 0; j < n; ++j) add(unit_vector(n, j));
  return Matrix::from_rows(rows, n);
}

// The polynomial system for change_basis(source, P') == target, where the
// target's structure constants may depend on parameter variables.
struct IsoProblem {
  std::size_t n = 0;
  AlgebraTable source;
  /// forced_zero[i][j]: P'_{ij} = 0.
  std::vector<std::vector<bool>> forced_zero;
  /// Diagonal blocks [begin, end) whose determinants must not vanish.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  /// (subspace of target, subspace of source): rows of the first map into the second.
  std::vector<std::pair<Subspace, Subspace>> subspace_pairs;
  /// Nilradical = first nil_dim coordinates on both sides; 0 disables spectral equations.
  std::size_t nil_dim = 0;
  std::size_t nparams = 0;
  /// Builds target entries / parameter side conditions from the parameter variables.
  std::function<std::vector<SymbolicEntry>(const std::vector<Poly>&)> target;
  std::function<std::vector<Poly>(const std::vector<Poly>&)> param_nonzero;
};

struct IsoSolution {
  Matrix p;
  std::vector<Scalar> params;
};

struct IsoOutcome {
  std::vector<IsoSolution> solutions;
  bool exhaustive = false;
  std::size_t nodes = 0;
};

IsoOutcome solve_iso(const IsoProblem& pr, const SearchOptions& opt, std::size_t max_solutions,
                     const std::function<bool(const IsoSolution&)>& accept) {
  const std::size_t n = pr.n;
  std::vector<std::vector<long>> var(n, std::vector<long>(n, -1));
  std::size_t nv = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!pr.forced_zero[i][j]) var[i][j] = static_cast<long>(nv++);
  if (nv + pr.nparams > kMaxVars) throw DimensionMismatch("isomorphism search exceeds the unknown limit");
  std::vector<Poly> params;
  for (std::size_t k = 0; k < pr.nparams; ++k) params.push_back(Poly::var(nv + k));

  PolyMatrix P(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (var[i][j] >= 0) P[i][j] = Poly::var(static_cast<std::size_t>(var[i][j]));

  PolySystem sys;
  sys.nvars = nv + pr.nparams;

  // Characteristic subspaces: v P' lies in the source subspace for v in the target one.
  for (const auto& [tgt, src] : pr.subspace_pairs) {
    const Matrix ann = src.annihilator();
    for (const auto& v : tgt.vectors()) {
      for (std::size_t w = 0; w < ann.rows(); ++w) {
        Poly e;
        for (std::size_t i = 0; i < n; ++i) {
          if (v[i].is_zero()) continue;
          for (std::size_t j = 0; j < n; ++j)
            if (!ann(w, j).is_zero() && !P[i][j].is_zero()) e += P[i][j] * (v[i] * ann(w, j));
        }
        if (!e.is_zero()) sys.equations.push_back(std::move(e));
      }
    }
  }

  const auto target = pr.target(params);
  std::vector<Poly> tdense(n * n * n);
  for (const auto& t : target) tdense[(t.i * n + t.j) * n + t.k] += t.c;

  // Spectral equations: R of a complement row restricted to the nilradical
  // has the target's characteristic polynomial (nilradical parts do not
  // contribute by Lie's theorem).
  if (pr.nil_dim > 0 && pr.nil_dim < n) {
    const std::size_t d = pr.nil_dim;
    for (std::size_t r = d; r < n; ++r) {
      PolyMatrix m(d, std::vector<Poly>(d));
      for (std::size_t q = d; q < n; ++q) {
        if (P[r][q].is_zero()) continue;
        for (std::size_t row = 0; row < d; ++row)
          for (std::size_t col = 0; col < d; ++col) {
            const Scalar& c = pr.source.coeff(col, q, row);
            if (!c.is_zero()) m[row][col] += P[r][q] * c;
          }
      }
      PolyMatrix tm(d, std::vector<Poly>(d));
      for (std::size_t row = 0; row < d; ++row)
        for (std::size_t col = 0; col < d; ++col) tm[row][col] = tdense[(col * n + r) * n + row];
      const auto cs = characteristic_polynomial(m);
      const auto ct = characteristic_polynomial(tm);
      for (std::size_t k = 0; k < d; ++k) {
        Poly e = cs[k] - ct[k];
        if (!e.is_zero()) sys.equations.push_back(std::move(e));
      }
    }
  }

  // Structure equations: [f_i, f_j] computed through P' equals sum_l t_ij^l f_l.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Poly> eq(n);
      for (const auto& e : pr.source.entries()) {
        if (P[i][e.i].is_zero() || P[j][e.j].is_zero()) continue;
        eq[e.k] += P[i][e.i] * P[j][e.j] * e.c;
      }
      for (std::size_t l = 0; l < n; ++l) {
        const Poly& t = tdense[(i * n + j) * n + l];
        if (t.is_zero()) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (!P[l][k].is_zero()) eq[k] -= t * P[l][k];
      }
      for (auto& e : eq)
        if (!e.is_zero()) sys.equations.push_back(std::move(e));
    }
  }

  for (const auto& [b, e] : pr.blocks) {
    PolyMatrix blk;
    for (std::size_t i = b; i < e; ++i) blk.emplace_back(P[i].begin() + static_cast<long>(b), P[i].begin() + static_cast<long>(e));
    sys.nonzero.push_back(poly_det(blk));
  }
  if (pr.param_nonzero)
    for (auto& z : pr.param_nonzero(params)) sys.nonzero.push_back(std::move(z));

  auto to_solution = [&](const std::vector<Scalar>& values) {
    IsoSolution s;
    s.p = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (var[i][j] >= 0) s.p(i, j) = values[static_cast<std::size_t>(var[i][j])];
    for (std::size_t k = 0; k < pr.nparams; ++k) s.params.push_back(values[nv + k]);
    return s;
  };

  SolverOptions so;
  so.budget = opt.budget;
  so.seed = opt.seed;
  so.height_bound = opt.height_bound;
  so.max_solutions = max_solutions;
  const SolutionFilter filter = [&](const std::vector<Scalar>& values) { return !accept || accept(to_solution(values)); };
  const SolveResult res = solve(sys, so, filter);
  IsoOutcome out;
  out.nodes = res.nodes;
  out.exhaustive = res.exhaustive && res.status != SolveStatus::BudgetExceeded;
  for (const auto& v : res.solutions) out.solutions.push_back(to_solution(v));
  return out;
}

struct Adapted {
  AlgebraTable table;
  Matrix basis;
  std::vector<std::size_t> chain_dims;
  std::size_t nil_dim = 0;  // 0 when not solvable or the nilradical is everything
};

Adapted adapt(const AlgebraTable& a) {
  const std::size_t n = a.dim();
  const Subspace whole = Subspace::whole(n);
  std::vector<Subspace> chain{product_space(a, whole, whole)};
  std::size_t nil_dim = 0;
  if (is_solvable(a)) {
    const Subspace nil = nilradical(a);
    chain.push_back(nil);
    if (nil.dim() < n) nil_dim = nil.dim();
  }
  Adapted out;
  out.basis = adapted_basis(n, chain);
  out.table = change_basis(a, out.basis);
  for (const auto& s : chain) out.chain_dims.push_back(s.dim());
  out.chain_dims.push_back(n);
  out.nil_dim = nil_dim;
  return out;
}

std::vector<Subspace> characteristic_subspaces(const AlgebraTable& t) {
  std::vector<Subspace> out;
  for (const auto& s : lower_central_series(t).terms) out.push_back(s);
  for (const auto& s : derived_series(t).terms) out.push_back(s);
  const Subspace ra = right_annihilator(t);
  const Subspace la = left_annihilator(t);
  out.push_back(ra);
  out.push_back(la);
  out.push_back(ra.intersect(la));
  const Subspace whole = Subspace::whole(t.dim());
  out.push_back(product_space(t, whole, whole).intersect(ra));
  return out;
}

}  // namespace

namespace {

struct CoreOutcome {
  std::optional<Matrix> p;
  bool exhaustive = false;
  std::size_t nodes = 0;
};

// One direction of the search: P with change_basis(a, P) == b.
CoreOutcome search_core(const AlgebraTable& a, const AlgebraTable& b, const SearchOptions& options) {
  CoreOutcome out;
  const std::size_t n = a.dim();
  const Adapted sa = adapt(a);
  const Adapted sb = adapt(b);

  IsoProblem pr;
  pr.n = n;
  pr.source = sa.table;
  auto block_of = [&](std::size_t i) {
    std::size_t blk = 0;
    while (i >= sa.chain_dims[blk]) ++blk;
    return blk;
  };
  pr.forced_zero.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pr.forced_zero[i][j] = block_of(j) > block_of(i);
  std::size_t start = 0;
  for (std::size_t d : sa.chain_dims) {
    if (d > start) pr.blocks.emplace_back(start, d);
    start = std::max(start, d);
  }
  const auto ca = characteristic_subspaces(sa.table);
  const auto cb = characteristic_subspaces(sb.table);
  for (std::size_t k = 0; k < std::min(ca.size(), cb.size()); ++k)
    if (ca[k].dim() == cb[k].dim()) pr.subspace_pairs.emplace_back(cb[k], ca[k]);
  pr.nil_dim = sa.nil_dim;
  pr.target = [&sb](const std::vector<Poly>&) {
    std::vector<SymbolicEntry> t;
    for (const auto& e : sb.table.entries()) t.push_back({e.i, e.j, e.k, Poly(e.c)});
    return t;
  };

  const IsoOutcome res = solve_iso(pr, options, 1, {});
  out.nodes = res.nodes;
  out.exhaustive = res.exhaustive;
  // P = B^{-1} P' A maps a onto b.
  if (!res.solutions.empty()) out.p = inverse(sb.basis) * res.solutions[0].p * sa.basis;
  return out;
}

}  // namespace


SearchResult search_isomorphism(const AlgebraTable& a, const AlgebraTable& b, const SearchOptions& options) {
  SearchResult out;
  if (a.dim() != b.dim()) {
    out.verdict = SearchVerdict::Incompatible;
    out.invariant = "dim";
    return out;
  }
  if (auto diff = first_difference(fingerprint(a), fingerprint(b))) {
    out.verdict = SearchVerdict::Incompatible;
    out.invariant = *diff;
    return out;
  }
  // Both directions pose the same problem with different elimination
  // behavior; they alternate under doubling budgets. The reversed one puts the
  // sparse catalog constants into the quadratic terms and goes first.
  std::optional<Matrix> p;
  bool exhaustive = false;
  std::size_t slice = 200;
  for (std::uint64_t round = 0; out.nodes < options.budget && !p && !exhaustive; ++round) {
    for (const bool reversed : {true, false}) {
      SearchOptions opt = options;
      opt.budget = std::min(slice, options.budget - std::min(options.budget, out.nodes));
      if (opt.budget == 0) break;
      opt.seed = options.seed + 7919 * round;
      const CoreOutcome r = reversed ? search_core(b, a, opt) : search_core(a, b, opt);
      out.nodes += r.nodes;
      if (r.p) {
        p = reversed ? inverse(*r.p) : *r.p;
        break;
      }
      if (r.exhaustive) {
        exhaustive = true;
        break;
      }
    }
    slice *= 2;
  }
  if (p) {
    if (!verify_isomorphism(a, b, *p)) throw Error("isomorphism certificate failed verification");
    out.verdict = SearchVerdict::Found;
    out.certificate = *p;
    return out;
  }
  out.verdict = SearchVerdict::NotFound;
  out.exhaustive = exhaustive;
  return out;
}

std::string matched_name(const std::string& family, const ParamMap& params) {
  if (family == "abelian_n") return "abelian_" + params.at("n").str();
  return family;
}

namespace {

ClassifyResult matched(const std::string& id, const ParamMap& params, const Matrix& p) {
  ClassifyResult r;
  r.verdict = ClassifyVerdict::Matched;
  r.family = id;
  r.params = params;
  r.certificate = p;
  return r;
}

// Candidate (family, params) for nilpotent algebras of dimension <= 3.
std::optional<std::pair<std::string, ParamMap>> low_dim_target(const AlgebraTable& a) {
  const std::size_t n = a.dim();
  const Subspace whole = Subspace::whole(n);
  const Subspace sq = product_space(a, whole, whole);
  if (sq.dim() == 0) {
    if (n == 3) return std::make_pair(std::string("lambda1"), ParamMap{});
    return std::make_pair(std::string("abelian_n"), ParamMap{{"n", Scalar(static_cast<long>(n))}});
  }
  if (n == 2) return std::make_pair(std::string("mu1"), ParamMap{});
  if (n != 3) return std::nullopt;
  if (sq.dim() == 2) return std::make_pair(std::string("lambda6"), ParamMap{});
  const auto f = square_form(a);
  if (!f) return std::nullopt;
  if (f->rank == 1) {
    if (f->alt_rank == 0) return std::make_pair(std::string("lambda2"), ParamMap{});
    return std::make_pair(std::string("lambda4p_beta"), ParamMap{{"beta", Scalar(0)}});
  }
  if (f->sym_rank == 0) return std::make_pair(std::string("lambda3"), ParamMap{});
  if (f->alt_rank == 0) return std::make_pair(std::string("lambda5"), ParamMap{});
  if (f->sym_rank == 1) return std::make_pair(std::string("lambda4p"), ParamMap{});
  const Scalar tau = trace(inverse(f->b) * f->b.transpose());
  // beta + 1/beta = tau.
  if (auto s = sqrt_exact(tau * tau - Scalar(4))) {
    const Scalar beta = (tau + *s) / Scalar(2);
    if (beta == Scalar(1) || beta == Scalar(-1)) return std::nullopt;
    return std::make_pair(std::string("lambda4p_beta"),
                          canonical_params("lambda4p_beta", ParamMap{{"beta", beta}}));
  }
  if (tau == Scalar(2)) return std::nullopt;
  return std::make_pair(std::string("lambda4"), ParamMap{{"alpha", (Scalar(2) - tau).inverse()}});
}

std::vector<std::pair<std::string, std::string>> structural(const Fingerprint& f) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto& c : f.components())
    if (c.first.find("spectrum") == std::string::npos && c.first.find("square_form") == std::string::npos)
      out.push_back(std::move(c));
  return out;
}

// Structural fingerprints of sampled members of each parameterized family.
const std::vector<std::vector<std::pair<std::string, std::string>>>& family_samples(const std::string& id) {
  static std::mutex mu;
  static std::map<std::string, std::vector<std::vector<std::pair<std::string, std::string>>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(id);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<std::pair<std::string, std::string>>> out;
  std::vector<ParamMap> points{roundtrip_params(id)};
  for (const auto& g : sample_grid())
    if (g.id == id) points.push_back(g.params);
  for (const auto& p : points) {
    auto s = structural(fingerprint(instantiate(id, p)));
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  }
  return cache.emplace(id, std::move(out)).first->second;
}

// Search for an isomorphism onto some member of a parameterized family,
// with the parameters as extra unknowns.
std::optional<std::pair<ParamMap, Matrix>> parametric_search(const AlgebraTable& a, const Adapted& sa,
                                                              const FamilySpec& f, const SearchOptions& opt) {
  const std::size_t n = a.dim();
  // The family's nilradical is spanned by its first nil_dim basis vectors.
  const std::size_t d = sa.nil_dim;
  IsoProblem pr;
  pr.n = n;
  pr.source = sa.table;
  pr.forced_zero.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = d; j < n; ++j) pr.forced_zero[i][j] = true;
  pr.blocks = {{0, d}, {d, n}};
  pr.nil_dim = d;
  pr.nparams = f.params.size();
  pr.target = [&f](const std::vector<Poly>& vars) {
    std::map<std::string, Poly> m;
    for (std::size_t k = 0; k < f.params.size(); ++k) m[f.params[k]] = vars[k];
    return instantiate_symbolic(f, m);
  };
  pr.param_nonzero = [&f](const std::vector<Poly>& vars) {
    std::map<std::string, Poly> m;
    for (std::size_t k = 0; k < f.params.size(); ++k) m[f.params[k]] = vars[k];
    std::vector<Poly> out;
    for (const auto& atom : f.constraint.atoms()) out.push_back(atom.lhs.evaluate(m) - atom.rhs.evaluate(m));
    return out;
  };
  const IsoOutcome res = solve_iso(pr, opt, 1, {});
  if (res.solutions.empty()) return std::nullopt;
  ParamMap params;
  for (std::size_t k = 0; k < f.params.size(); ++k) params[f.params[k]] = res.solutions[0].params[k];
  const Matrix p = res.solutions[0].p * sa.basis;
  if (!verify_isomorphism(a, instantiate(f.id, params), p)) throw Error("parametric certificate failed verification");
  return std::make_pair(params, p);
}

// Parameter proposals for a family whose nilradical is spanned by its first
// n-1 basis vectors: the characteristic coefficients of R_x on the nilradical
// agree with the input's up to x -> c x + n, which scales a_k by c^k.
std::vector<ParamMap> spectral_proposals(const AlgebraTable& a, const Subspace& nil, const FamilySpec& f,
                                         const SearchOptions& opt) {
  const std::size_t n = a.dim();
  const std::size_t d = nil.dim();
  if (d + 1 != n || f.params.empty()) return {};
  const auto comp = complement_indices(nil);
  const auto input = characteristic_polynomial(restrict_operator(right_multiplication(a, unit_vector(n, comp[0])), nil));

  const std::size_t np = f.params.size();
  std::map<std::string, Poly> vars;
  for (std::size_t k = 0; k < np; ++k) vars[f.params[k]] = Poly::var(k);
  const Poly scale = Poly::var(np);
  std::vector<std::vector<Poly>> m(d, std::vector<Poly>(d));
  for (const auto& t : instantiate_symbolic(f, vars))
    if (t.j == d && t.i < d && t.k < d) m[t.k][t.i] += t.c;
  const auto templ = characteristic_polynomial(m);

  PolySystem sys;
  sys.nvars = np + 1;
  Poly power(1);
  for (std::size_t k = 1; k <= d; ++k) {
    power = power * scale;
    Poly e = templ[d - k] - power * input[d - k];
    if (!e.is_zero()) sys.equations.push_back(std::move(e));
  }
  sys.nonzero.push_back(scale);
  for (const auto& atom : f.constraint.atoms()) sys.nonzero.push_back(atom.lhs.evaluate(vars) - atom.rhs.evaluate(vars));

  SolverOptions so;
  so.budget = std::min<std::size_t>(opt.budget, 5000);
  so.seed = opt.seed;
  so.height_bound = opt.height_bound;
  so.max_solutions = 16;
  std::vector<ParamMap> out;
  for (const auto& sol : solve(sys, so).solutions) {
    ParamMap p;
    for (std::size_t k = 0; k < np; ++k) p[f.params[k]] = sol[k];
    if (f.constraint.first_violation(p)) continue;
    p = canonical_params(f.id, p);
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

ClassifyResult classify(const AlgebraTable& a, const SearchOptions& options) {
  const auto lc = leibniz_check(a);
  if (!lc.pass) {
    throw NotLeibniz("input fails the Leibniz identity at basis triple (" + std::to_string(lc.witness[0] + 1) +
                     "," + std::to_string(lc.witness[1] + 1) + "," + std::to_string(lc.witness[2] + 1) + ")");
  }
  const std::size_t n = a.dim();
  ClassifyResult unmatched;
  unmatched.verdict = ClassifyVerdict::Unmatched;

  if (!is_solvable(a)) {
    if (n == 4) {
      const auto sr = search_isomorphism(a, instantiate("sl2c", {}), options);
      if (sr.verdict == SearchVerdict::Found) {
        ClassifyResult r;
        r.verdict = ClassifyVerdict::NonSolvable;
        r.family = "sl2c";
        r.certificate = sr.certificate;
        return r;
      }
      unmatched.report = sr.verdict == SearchVerdict::Incompatible ? "non-solvable; differs from sl2c in " + sr.invariant
                                                                   : "non-solvable; no isomorphism to sl2c found";
      return unmatched;
    }
    unmatched.report = "non-solvable algebra outside the catalog dimensions";
    return unmatched;
  }

  const Subspace nil = nilradical(a);
  std::vector<Vector> complement;
  for (std::size_t j : complement_indices(nil)) complement.push_back(unit_vector(n, j));
  auto decorate = [&](ClassifyResult r) {
    r.nilradical = nil;
    r.complement = complement;
    return r;
  };

  if (nil.dim() == n) {
    const Subspace whole = Subspace::whole(n);
    if (n == 4 && product_space(a, whole, whole).dim() > 0) {
      ClassifyResult r;
      r.verdict = ClassifyVerdict::OutOfScopeNilpotent;
      r.report = "4-dimensional nilpotent algebras are outside the catalog";
      return decorate(r);
    }
    if (n == 4) {
      ClassifyResult r;
      r.verdict = ClassifyVerdict::OutOfScopeNilpotent;
      r.report = "4-dimensional abelian algebra (nilpotent, outside the catalog)";
      return decorate(r);
    }
    const auto target = low_dim_target(a);
    if (!target) {
      unmatched.report = "nilpotent algebra with no catalog normal form";
      return decorate(unmatched);
    }
    const AlgebraTable b = instantiate(target->first, target->second);
    const auto sr = search_isomorphism(a, b, options);
    if (sr.verdict == SearchVerdict::Found) return decorate(matched(target->first, target->second, *sr.certificate));
    unmatched.report = "expected " + target->first + " but no certificate was found";
    return decorate(unmatched);
  }

  if (n != 4) {
    unmatched.report = "solvable non-nilpotent algebra of dimension " + std::to_string(n) + " is outside the catalog";
    return decorate(unmatched);
  }

  const AlgebraTable nil_table = restrict_to(a, nil);
  const ClassifyResult nil_class = classify(nil_table, options);
  if (nil_class.verdict != ClassifyVerdict::Matched) {
    unmatched.report = "nilradical is not a catalog algebra";
    return decorate(unmatched);
  }
  const std::string nil_name = matched_name(nil_class.family, nil_class.params);
  const Fingerprint fp = fingerprint(a);
  const auto fp_struct = structural(fp);
  const Adapted sa = adapt(a);

  std::vector<const FamilySpec*> likely, rest;
  for (const auto& f : list_families()) {
    if (f.dim != 4 || !f.claimed.solvable || f.claimed.nilpotent) continue;
    if (f.claimed.nilradical_dim != nil.dim() || f.claimed.nilradical != nil_name) continue;
    const auto& samples = family_samples(f.id);
    const bool hit = std::find(samples.begin(), samples.end(), fp_struct) != samples.end();
    (hit ? likely : rest).push_back(&f);
  }

  // Routes whose target already agrees on every invariant.
  auto direct = [&](const FamilySpec& f, const SearchOptions& opt) -> std::optional<ClassifyResult> {
    if (f.params.empty()) {
      const AlgebraTable b = instantiate(f.id, {});
      if (first_difference(fp, fingerprint(b))) return std::nullopt;
      const auto sr = search_isomorphism(a, b, opt);
      if (sr.verdict == SearchVerdict::Found) return matched(f.id, {}, *sr.certificate);
      return std::nullopt;
    }
    for (const auto& p : spectral_proposals(a, nil, f, opt)) {
      const AlgebraTable b = instantiate(f.id, p);
      if (first_difference(fp, fingerprint(b))) continue;
      const auto sr = search_isomorphism(a, b, opt);
      if (sr.verdict == SearchVerdict::Found) return matched(f.id, p, *sr.certificate);
    }
    return std::nullopt;
  };
  // Parameters as unknowns, for points the spectral proposals miss.
  auto parametric = [&](const FamilySpec& f, const SearchOptions& opt) -> std::optional<ClassifyResult> {
    if (f.params.empty()) return std::nullopt;
    auto hit = parametric_search(a, sa, f, opt);
    if (!hit) return std::nullopt;
    const ParamMap canon = canonical_params(f.id, hit->first);
    if (canon != hit->first) {
      const auto sr = search_isomorphism(a, instantiate(f.id, canon), opt);
      if (sr.verdict == SearchVerdict::Found) return matched(f.id, canon, *sr.certificate);
    }
    return matched(f.id, hit->first, hit->second);
  };

  SearchOptions reduced = options;
  reduced.budget = std::max<std::size_t>(1000, options.budget / 10);
  for (const auto* f : likely)
    if (auto r = direct(*f, options)) return decorate(*r);
  for (const auto* f : rest)
    if (auto r = direct(*f, reduced)) return decorate(*r);
  for (const auto* f : likely)
    if (auto r = parametric(*f, options)) return decorate(*r);
  for (const auto* f : rest)
    if (auto r = parametric(*f, reduced)) return decorate(*r);

  unmatched.report = "solvable with nilradical " + nil_name + "; no catalog family matched";
  return decorate(unmatched);
}

CensusReport census(const std::vector<GridEntry>& grid, const SearchOptions& options, unsigned threads) {
  CensusReport rep;
  rep.entries = grid;
  const std::size_t m = grid.size();
  for (const auto& g : grid) rep.names.push_back(entry_name(g));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  auto parallel_for = [threads](std::size_t count, const std::function<void(std::size_t)>& body) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mu;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t k = next.fetch_add(1);
          if (k >= count) return;
          try {
            body(k);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  };

  std::vector<AlgebraTable> tables(m);
  std::vector<Fingerprint> fps(m);
  std::vector<std::vector<std::pair<std::string, std::string>>> comps(m);
  parallel_for(m, [&](std::size_t k) {
    tables[k] = instantiate(grid[k].id, grid[k].params);
    fps[k] = fingerprint(tables[k]);
    comps[k] = fps[k].components();
  });

  rep.pairs.reserve(m * (m - 1) / 2);
  std::vector<std::size_t> to_search;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      CensusPair p;
      p.a = i;
      p.b = j;
      if (tables[i].dim() != tables[j].dim()) {
        p.verdict = CensusVerdict::Distinct;
        p.witness = "dim";
      } else {
        const auto& x = comps[i];
        const auto& y = comps[j];
        std::optional<std::string> diff;
        for (std::size_t k = 0; k < std::min(x.size(), y.size()) && !diff; ++k)
          if (x[k] != y[k]) diff = x[k].first;
        if (!diff && x.size() != y.size()) diff = "nilradical";
        if (diff) {
          p.verdict = CensusVerdict::Distinct;
          p.witness = *diff;
        } else {
          to_search.push_back(rep.pairs.size());
        }
      }
      rep.pairs.push_back(std::move(p));
    }
  }

  parallel_for(to_search.size(), [&](std::size_t k) {
    CensusPair& p = rep.pairs[to_search[k]];
    SearchOptions opt = options;
    opt.seed = options.seed ^ (static_cast<std::uint64_t>(p.a) * 1000003u + p.b);
    const auto sr = search_isomorphism(tables[p.a], tables[p.b], opt);
    if (sr.verdict == SearchVerdict::Found) {
      p.verdict = CensusVerdict::Isomorphic;
      p.certificate = sr.certificate;
      p.witness = "certificate verified";
    } else {
      p.verdict = CensusVerdict::Undecided;
      p.witness = sr.exhaustive ? "fingerprints agree; exhaustive search found no rational certificate"
                                : "fingerprints agree; search budget exhausted";
    }
  });

  for (const auto& p : rep.pairs) {
    const bool cross = grid[p.a].id != grid[p.b].id;
    switch (p.verdict) {
      case CensusVerdict::Distinct: ++rep.distinct; break;
      case CensusVerdict::Isomorphic:
        ++rep.isomorphic;
        if (cross) ++rep.cross_family_isomorphic;
        break;
      case CensusVerdict::Undecided:
        ++rep.undecided;
        if (cross) ++rep.cross_family_undecided;
        break;
    }
  }
  return rep;
}

}  // namespace leibniz
