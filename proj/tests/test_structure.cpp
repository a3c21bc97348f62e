#include <random>

#include "doctest.h"
#include "leibniz/algebra.hpp"
#include "leibniz/catalog.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/structure.hpp"
#include "support.hpp"

using namespace leibniz;

namespace {

Scalar q(const char* s) { return Scalar::parse(s); }

Subspace span_units(std::size_t n, std::initializer_list<std::size_t> idx) {
  std::vector<Vector> vs;
  for (std::size_t i : idx) vs.push_back(unit_vector(n, i));
  return Subspace::span(n, vs);
}

using Dims = std::vector<std::size_t>;

}  // namespace

TEST_CASE("lower central series") {
  const auto mu1 = lower_central_series(instantiate("mu1", {}));
  CHECK(mu1.dims == Dims{2, 1, 0});
  CHECK(mu1.index == 3u);
  const auto l6 = lower_central_series(instantiate("lambda6", {}));
  CHECK(l6.dims == Dims{3, 2, 1, 0});
  CHECK(l6.index == 4u);
  const auto ab = lower_central_series(AlgebraTable::abelian(3));
  CHECK(ab.dims == Dims{3, 0});
  // A solvable non-nilpotent algebra stabilizes; the repeated term closes the list.
  const auto l2 = lower_central_series(instantiate("L2", {}));
  CHECK_FALSE(l2.index.has_value());
  CHECK(l2.dims.size() <= 5);
}

TEST_CASE("derived series") {
  const auto r1 = derived_series(instantiate("R1", {}));
  CHECK(r1.dims == Dims{4, 2, 0});
  CHECK(r1.terms[1] == span_units(4, {0, 1}));
  const auto sl = derived_series(instantiate("sl2c", {}));
  CHECK_FALSE(sl.index.has_value());
  CHECK(sl.dims.back() == 3);
  CHECK(derived_series(AlgebraTable::abelian(5)).dims == Dims{5, 0});
}

TEST_CASE("nilpotency and solvability") {
  CHECK(is_nilpotent_algebra(instantiate("lambda4p_beta", {{"beta", q("1/2")}})));
  const AlgebraTable l2 = instantiate("L2", {});
  CHECK_FALSE(is_nilpotent_algebra(l2));
  CHECK(is_solvable(l2));
  CHECK_FALSE(is_solvable(instantiate("sl2c", {})));
}

TEST_CASE("right annihilator") {
  CHECK(right_annihilator(instantiate("L2", {})) == span_units(4, {2}));
  CHECK(right_annihilator(instantiate("R3", {})) == span_units(4, {0}));
  CHECK(right_annihilator(instantiate("R2", {})).dim() == 0);
  const AlgebraTable l15 = instantiate("L15", {{"lambda", q("2")}});
  CHECK(is_ideal(l15, right_annihilator(l15)));
}

TEST_CASE("nilradical") {
  CHECK(nilradical(instantiate("R1", {})) == span_units(4, {0, 1}));
  const AlgebraTable l9 = instantiate("L9", {{"gamma", q("3")}});
  const Subspace n9 = nilradical(l9);
  CHECK(n9 == span_units(4, {0, 1, 2}));
  const AlgebraTable restricted = restrict_to(l9, n9);
  CHECK(lower_central_series(restricted).dims == lower_central_series(instantiate("lambda2", {})).dims);
  CHECK(derivation_space(restricted).dim() == derivation_space(instantiate("lambda2", {})).dim());
  CHECK(nilradical(AlgebraTable::abelian(4)) == Subspace::whole(4));
  CHECK_THROWS_AS(nilradical(instantiate("sl2c", {})), NotSolvable);
}

TEST_CASE("derivation space") {
  CHECK(derivation_space(instantiate("lambda1", {})).dim() == 9);
  CHECK(derivation_space(instantiate("lambda6", {})).dim() == 3);
  const auto mu1 = derivation_space(instantiate("mu1", {}));
  CHECK(mu1.dim() == 2);
  for (const auto& d : mu1.basis) CHECK(is_derivation(instantiate("mu1", {}), d));
}

TEST_CASE("is_derivation") {
  const AlgebraTable a = instantiate("L20", {{"mu2", q("2")}, {"mu3", q("3")}});
  for (std::size_t i = 0; i < 4; ++i) CHECK(is_derivation(a, right_multiplication(a, unit_vector(4, i))));
  CHECK(is_derivation(a, right_multiplication(a, Vector{q("1/2"), Scalar(3), q("-1"), q("2+i")})));
  const AlgebraTable mu1 = instantiate("mu1", {});
  CHECK_FALSE(is_derivation(mu1, Matrix::identity(2)));
  CHECK(is_derivation(mu1, Matrix{{1, 0}, {0, 2}}));
  CHECK(is_derivation(mu1, Matrix(2, 2)));
  CHECK_THROWS_AS(is_derivation(mu1, Matrix(3, 3)), DimensionMismatch);
}

TEST_CASE("operator nilpotency") {
  CHECK(operator_nilpotent(Matrix{{0, 1, 2}, {0, 0, 3}, {0, 0, 0}}));
  CHECK_FALSE(operator_nilpotent(Matrix{{1, 0}, {0, 2}}));
  const AlgebraTable l43 = instantiate("L43", {});
  const Matrix rx = right_multiplication(l43, unit_vector(4, 3));
  Matrix on_nil(3, 3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) on_nil(r, c) = rx(r, c);
  CHECK_FALSE(operator_nilpotent(on_nil));
  CHECK(characteristic_polynomial(on_nil) ==
        std::vector<Scalar>{Scalar(-6), Scalar(11), Scalar(-6), Scalar(1)});
}

TEST_CASE("nil-independence") {
  const Matrix d_a1{{1, 0}, {0, 2}};
  const Matrix d_a2{{0, 0}, {1, 0}};
  CHECK(nil_independent_check({d_a1}).verdict == NilVerdict::Verified);
  const auto refuted = nil_independent_check({d_a2});
  CHECK(refuted.verdict == NilVerdict::Refuted);
  REQUIRE(refuted.witness.size() == 1);
  CHECK_FALSE(refuted.witness[0].is_zero());
  CHECK(nil_independent_check({Matrix{{1, 0}, {0, 0}}, Matrix{{0, 0}, {0, 1}}}).verdict == NilVerdict::Verified);
  // a diag(1,-1) + b I = diag(a+b, b-a) is nilpotent only for a = b = 0.
  CHECK(nil_independent_check({Matrix{{1, 0}, {0, -1}}, Matrix::identity(2)}).verdict == NilVerdict::Verified);
  // Equal generators: their difference is zero.
  const auto mixed = nil_independent_check({Matrix{{1, 0}, {0, 1}}, Matrix{{1, 0}, {0, 1}}});
  CHECK(mixed.verdict == NilVerdict::Refuted);
  CHECK_THROWS_AS(nil_independent_check({Matrix(2, 2), Matrix(3, 3)}), DimensionMismatch);
}

TEST_CASE("maximal nil-independent families") {
  const auto mu1 = max_nil_independent(instantiate("mu1", {}));
  CHECK(mu1.lower_bound == 1);
  CHECK(mu1.exact);
  const auto ab2 = max_nil_independent(AlgebraTable::abelian(2));
  CHECK(ab2.lower_bound == 2);
  CHECK(ab2.exact);
  CHECK(nil_independent_check(ab2.certificate).verdict == NilVerdict::Verified);
  const auto ab3 = max_nil_independent(AlgebraTable::abelian(3));
  CHECK(ab3.lower_bound == 3);
  CHECK(ab3.exact);
}

TEST_CASE("structural invariants survive random basis changes") {
  std::mt19937_64 rng(77);
  for (const char* id : {"L1", "L9", "L15", "L21", "L30", "L43", "R3", "lambda6", "sl2c"}) {
    const auto& f = find_family(id);
    const AlgebraTable a = instantiate(id, roundtrip_params(f.id));
    const auto lcs = lower_central_series(a);
    const auto ds = derived_series(a);
    for (int round = 0; round < 10; ++round) {
      const AlgebraTable b = change_basis(a, testing::random_invertible(rng, a.dim()));
      CHECK(lower_central_series(b).dims == lcs.dims);
      CHECK(derived_series(b).dims == ds.dims);
      CHECK(right_annihilator(b).dim() == right_annihilator(a).dim());
      CHECK(derivation_space(b).dim() == derivation_space(a).dim());
      if (is_solvable(a)) CHECK(nilradical(b).dim() == nilradical(a).dim());
    }
  }
}

TEST_CASE("series relations on the catalog grid") {
  for (const auto& g : sample_grid()) {
    const AlgebraTable a = instantiate(g.id, g.params);
    const auto lcs = lower_central_series(a);
    const auto ds = derived_series(a);
    // L^[s] lies in L^(2^(s-1)).
    for (std::size_t s = 1; s < ds.terms.size(); ++s) {
      const std::size_t k = std::min<std::size_t>(std::size_t{1} << s, lcs.terms.size()) - 1;
      CHECK(lcs.terms[k].contains(ds.terms[s]));
    }
    if (is_nilpotent_algebra(a)) CHECK(is_solvable(a));
    if (is_solvable(a) && a.dim() > 1) {
      const Subspace sq = product_space(a, Subspace::whole(a.dim()), Subspace::whole(a.dim()));
      try {
        CHECK(nilradical(a).contains(sq));
      } catch (const NilradicalUndetermined&) {
      }
    }
  }
}
