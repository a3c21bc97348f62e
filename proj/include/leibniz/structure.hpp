#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/matrix.hpp"
#include "leibniz/poly.hpp"
#include "leibniz/solver.hpp"

namespace leibniz {

enum class SeriesKind { LowerCentral, Derived };

/// Dimensions of L^1 = L, L^2, ... (or L^[1], L^[2], ...) until the first
/// zero or the first repeated term. `index` is the position (1-based) of the
/// first zero term, absent when the series stabilizes above zero.
struct SeriesProfile {
  SeriesKind kind = SeriesKind::LowerCentral;
  std::vector<std::size_t> dims;
  std::optional<std::size_t> index;
  std::vector<Subspace> terms;
};

SeriesProfile lower_central_series(const AlgebraTable& a);
SeriesProfile derived_series(const AlgebraTable& a);
bool is_nilpotent_algebra(const AlgebraTable& a);
bool is_solvable(const AlgebraTable& a);

/// {x : [y, x] = 0 for all y}.
Subspace right_annihilator(const AlgebraTable& a);
/// {x : [x, y] = 0 for all y}.
Subspace left_annihilator(const AlgebraTable& a);
/// Intersection of both annihilators.
Subspace center(const AlgebraTable& a);

/// True when s is a two-sided ideal.
bool is_ideal(const AlgebraTable& a, const Subspace& s);

/// Maximal nilpotent ideal. Throws NotSolvable for non-solvable input and
/// NilradicalUndetermined when the candidate cannot be certified.
Subspace nilradical(const AlgebraTable& a);

struct DerivationSpace {
  std::size_t algebra_dim = 0;
  /// Matrices acting on column vectors: column j is d(e_j).
  std::vector<Matrix> basis;
  std::size_t dim() const { return basis.size(); }
};

DerivationSpace derivation_space(const AlgebraTable& a);
bool is_derivation(const AlgebraTable& a, const Matrix& d);

enum class NilVerdict { Verified, Refuted, Unknown };

struct NilIndependence {
  NilVerdict verdict = NilVerdict::Unknown;
  /// Coefficients of a nonzero nilpotent combination (Refuted only). Empty
  /// when every such combination has coefficients outside Q(i).
  std::vector<Scalar> witness;
};

/// Decides whether no nonzero linear combination of ds is nilpotent. Exact
/// for up to two matrices; budgeted elimination plus seeded random
/// falsification for more.
NilIndependence nil_independent_check(const std::vector<Matrix>& ds, std::uint64_t seed = 1,
                                      std::size_t budget = kDefaultBudget);

struct MaxNilIndependent {
  std::size_t lower_bound = 0;
  std::vector<Matrix> certificate;
  std::size_t upper_bound = 0;
  bool exact = false;
};

/// Largest nil-independent family found inside derivation_space(a), with an
/// upper bound from dimension counting.
MaxNilIndependent max_nil_independent(const AlgebraTable& a, std::size_t budget = kDefaultBudget,
                                      std::uint64_t seed = 1);

/// det(t I - m) coefficients (ascending) for a matrix of polynomials.
std::vector<Poly> characteristic_polynomial(const std::vector<std::vector<Poly>>& m);

}  // namespace leibniz
