#include <random>

#include "doctest.h"
#include "leibniz/catalog.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/iso.hpp"
#include "support.hpp"

using namespace leibniz;

namespace {

Scalar q(const char* s) { return Scalar::parse(s); }

}  // namespace

TEST_CASE("fingerprints separate by the first differing component") {
  const auto diff = first_difference(fingerprint(instantiate("R2", {})), fingerprint(instantiate("R3", {})));
  REQUIRE(diff.has_value());
  CHECK(*diff == "dim right_annihilator");
  const auto ra = first_difference(fingerprint(instantiate("L1", {{"gamma", q("2")}})), fingerprint(instantiate("L2", {})));
  REQUIRE(ra.has_value());
  // Both have 3-dimensional L^2 and matching series; only L2 has [e4,e4] = e3.
  CHECK(*ra == "dim right_annihilator");
  const AlgebraTable a = instantiate("L20", {{"mu2", q("2")}, {"mu3", q("3")}});
  const AlgebraTable b = instantiate("L20", {{"mu2", q("3")}, {"mu3", q("2")}});
  CHECK_FALSE(first_difference(fingerprint(a), fingerprint(b)).has_value());
}

TEST_CASE("fingerprints are basis independent") {
  std::mt19937_64 rng(3);
  for (const char* id : {"L2", "L9", "L21", "L30", "L35", "L43", "R2", "sl2c", "lambda4p_beta"}) {
    const AlgebraTable a = instantiate(id, roundtrip_params(id));
    const Fingerprint fa = fingerprint(a);
    for (int round = 0; round < 3; ++round) {
      const AlgebraTable b = change_basis(a, testing::random_invertible(rng, a.dim()));
      const auto d = first_difference(fa, fingerprint(b));
      CHECK_MESSAGE(!d.has_value(), id << " differs at " << d.value_or(""));
    }
  }
}

TEST_CASE("verify_isomorphism") {
  const AlgebraTable l4 = instantiate("lambda4", {{"alpha", q("0")}});
  const AlgebraTable l4p = instantiate("lambda4p_beta", {{"beta", q("0")}});
  // Hand check: with f1 = e2, f2 = e1 - e2, f3 = e3 the only product of
  // lambda4(0) that survives is [f2, f1] = [e1, e2] - [e2, e2] = e3.
  const Matrix p{{0, 1, 0}, {1, -1, 0}, {0, 0, 1}};
  CHECK(verify_isomorphism(l4, l4p, p));
  CHECK(verify_isomorphism(l4, l4, Matrix::identity(3)));
  CHECK_FALSE(verify_isomorphism(l4, l4p, Matrix::identity(3)));
  CHECK_FALSE(verify_isomorphism(instantiate("mu1", {}), AlgebraTable::abelian(2), Matrix::identity(2)));
  CHECK_THROWS_AS(verify_isomorphism(l4, l4p, Matrix(3, 3)), SingularMatrix);
}

TEST_CASE("search_isomorphism") {
  const AlgebraTable a = instantiate("lambda4", {{"alpha", q("-2")}});
  const AlgebraTable b = instantiate("lambda4p_beta", {{"beta", q("1/2")}});
  const SearchResult r = search_isomorphism(a, b);
  REQUIRE(r.verdict == SearchVerdict::Found);
  REQUIRE(r.certificate.has_value());
  CHECK(verify_isomorphism(a, b, *r.certificate));
  // The inverse certificate goes the other way.
  CHECK(verify_isomorphism(b, a, inverse(*r.certificate)));

  const SearchResult inc = search_isomorphism(instantiate("R2", {}), instantiate("R3", {}));
  CHECK(inc.verdict == SearchVerdict::Incompatible);
  CHECK(inc.invariant == "dim right_annihilator");

  std::mt19937_64 rng(8);
  const AlgebraTable l15 = instantiate("L15", {{"lambda", q("3")}});
  const AlgebraTable moved = change_basis(l15, testing::random_invertible(rng, 4));
  const SearchResult back = search_isomorphism(moved, l15);
  REQUIRE(back.verdict == SearchVerdict::Found);
  CHECK(verify_isomorphism(moved, l15, *back.certificate));
}

TEST_CASE("classify") {
  const ClassifyResult sl = classify(instantiate("sl2c", {}));
  CHECK(sl.verdict == ClassifyVerdict::NonSolvable);
  CHECK(classify(AlgebraTable::abelian(4)).verdict == ClassifyVerdict::OutOfScopeNilpotent);
  // Below dimension 4 the nilpotent tables are catalog entries themselves.
  const ClassifyResult small = classify(instantiate("lambda6", {}));
  CHECK(small.verdict == ClassifyVerdict::Matched);
  CHECK(small.family == "lambda6");

  std::mt19937_64 rng(19);
  const AlgebraTable l20 = instantiate("L20", {{"mu2", q("2")}, {"mu3", q("3")}});
  const AlgebraTable moved = change_basis(l20, testing::random_invertible(rng, 4));
  const ClassifyResult m = classify(moved);
  REQUIRE(m.verdict == ClassifyVerdict::Matched);
  CHECK(m.family == "L20");
  REQUIRE(m.certificate.has_value());
  CHECK(verify_isomorphism(moved, instantiate(m.family, m.params), *m.certificate));
  REQUIRE(m.nilradical.has_value());
  CHECK(m.nilradical->dim() + m.complement.size() == 4);

  const AlgebraTable broken(1, {{0, 0, 0, Scalar(1)}});
  CHECK_THROWS_AS(classify(broken), NotLeibniz);
}

TEST_CASE("census on a small grid") {
  const std::vector<GridEntry> grid{{"R1", {}},
                                    {"R2", {}},
                                    {"L1", {{"gamma", q("2")}}},
                                    {"L1", {{"gamma", q("1/2")}}},
                                    {"lambda3", {}},
                                    {"lambda5", {}}};
  const CensusReport r = census(grid, {}, 1);
  REQUIRE(r.pairs.size() == 15);
  auto verdict = [&](std::size_t a, std::size_t b) {
    for (const auto& p : r.pairs)
      if (p.a == a && p.b == b) return p.verdict;
    FAIL("pair missing");
    return CensusVerdict::Undecided;
  };
  CHECK(verdict(0, 1) == CensusVerdict::Distinct);
  CHECK(verdict(2, 3) == CensusVerdict::Isomorphic);
  CHECK(verdict(4, 5) == CensusVerdict::Distinct);
  CHECK(r.isomorphic == 1);
  CHECK(r.undecided == 0);
  CHECK(r.distinct == 14);
}
