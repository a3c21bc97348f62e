#include <random>

#include "doctest.h"
#include "leibniz/algebra.hpp"
#include "leibniz/catalog.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/matrix.hpp"
#include "leibniz/structure.hpp"
#include "support.hpp"

using namespace leibniz;

namespace {

Scalar q(const char* s) { return Scalar::parse(s); }

AlgebraTable table(std::size_t n, std::vector<AlgebraTable::Entry> entries) { return AlgebraTable(n, std::move(entries)); }

}  // namespace

TEST_CASE("scalar parsing and formatting") {
  const Scalar a = q("3/4-2i");
  CHECK(a.re() == mpq_class(3, 4));
  CHECK(a.im() == -2);
  CHECK(q("0").is_zero());
  CHECK(q("1/2+1/3i").str() == "1/2+1/3i");
  CHECK(q("2/4").str() == "1/2");
  CHECK(q("i").str() == "i");
  // A bare negative unit is written with an explicit 1.
  CHECK(q("-i").str() == "-1i");
  CHECK(q(q("-1i").str().c_str()) == Scalar(0, -1));
  for (const char* bad : {"1/0", "abc", "1//2", "", "1/-2", "i2", "1+", "--1"})
    CHECK_THROWS_AS(Scalar::parse(bad), ParseError);
}

TEST_CASE("scalar field axioms on a seeded sample") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    const Scalar x = testing::random_rational(rng, 30) + testing::random_rational(rng, 30) * Scalar::i();
    const Scalar y = testing::random_rational(rng, 30) + testing::random_rational(rng, 30) * Scalar::i();
    const Scalar z = testing::random_rational(rng, 30);
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK((x + y) * z == x * z + y * z);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * x.inverse() == Scalar(1));
    CHECK(x - x == Scalar(0));
    CHECK(Scalar::parse(x.str()) == x);
  }
}

TEST_CASE("kernel") {
  const Subspace k = kernel(Matrix{{1, 1}, {0, 0}});
  CHECK(k.dim() == 1);
  CHECK(k.contains(Vector{Scalar(1), Scalar(-1)}));
  CHECK(kernel(Matrix::identity(3)).dim() == 0);

  // Rank-nullity and canonical form on random matrices.
  std::mt19937_64 rng(5);
  for (int round = 0; round < 30; ++round) {
    Matrix m(3, 5);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 5; ++c) m(r, c) = Scalar(static_cast<long>(rng() % 5) - 2);
    const Subspace k1 = kernel(m);
    CHECK(k1.dim() + rank(m) == 5);
    // Same row space, different rows: identical kernel.
    Matrix m2 = m;
    m2.set_row(0, m.row(0) + m.row(1));
    if (rank(m2) == rank(m)) CHECK(kernel(m2) == k1);
  }
}

TEST_CASE("derivation constraints of mu1 have a 2-dimensional kernel") {
  // Unknowns (d11, d12, d21, d22) with d(e_j) = sum_i d_ij e_i. Applying the
  // rule to [e1,e1] = e2 gives d(e2) = 2 d11 e2, so d12 = 0 and d22 = 2 d11.
  Matrix m(2, 4);
  m(0, 1) = 1;
  m(1, 3) = 1;
  m(1, 0) = -2;
  CHECK(kernel(m).dim() == 2);
}

TEST_CASE("bracket") {
  const AlgebraTable mu1 = instantiate("mu1", {});
  CHECK(bracket(mu1, unit_vector(2, 0), unit_vector(2, 0)) == unit_vector(2, 1));
  const AlgebraTable sl = instantiate("sl2c", {});
  CHECK(bracket(sl, unit_vector(4, 0), unit_vector(4, 1)) == unit_vector(4, 2));
  const AlgebraTable ab = AlgebraTable::abelian(3);
  CHECK(is_zero(bracket(ab, Vector{Scalar(1), Scalar(2), Scalar(3)}, Vector{Scalar(4), Scalar(5), Scalar(6)})));
  CHECK_THROWS_AS(bracket(ab, unit_vector(2, 0), unit_vector(3, 0)), DimensionMismatch);
}

TEST_CASE("leibniz_check") {
  const auto bad = leibniz_check(table(1, {{0, 0, 0, Scalar(1)}}));
  CHECK_FALSE(bad.pass);
  CHECK(bad.witness == std::array<std::size_t, 3>{0, 0, 0});
  CHECK(bad.defect == unit_vector(1, 0));
  CHECK(leibniz_check(instantiate("sl2c", {})).pass);
  CHECK(leibniz_check(instantiate("L1", {{"gamma", q("2")}})).pass);
}

TEST_CASE("is_lie") {
  CHECK(is_lie(instantiate("L1", {{"gamma", q("2")}})).lie);
  const auto r3 = is_lie(instantiate("R3", {}));
  CHECK_FALSE(r3.lie);
  CHECK(r3.witness == std::array<std::size_t, 2>{0, 2});
  const auto mu1 = is_lie(instantiate("mu1", {}));
  CHECK_FALSE(mu1.lie);
  CHECK(mu1.witness == std::array<std::size_t, 2>{0, 0});
}

TEST_CASE("change_basis") {
  // {[e1,e1]=e3, [e2,e1]=e3, [e1,e2]=e3} under e1' = e1 - e2/2.
  const AlgebraTable variant =
      table(3, {{0, 0, 2, Scalar(1)}, {1, 0, 2, Scalar(1)}, {0, 1, 2, Scalar(1)}});
  const Matrix p{{1, q("-1/2"), 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(change_basis(variant, p) == instantiate("lambda5", {}));

  const AlgebraTable l2 = instantiate("lambda2", {});
  CHECK(change_basis(l2, Matrix::identity(3)) == l2);
  const AlgebraTable scaled = change_basis(l2, Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}});
  CHECK(scaled.coeff(0, 0, 2) == q("1/2"));

  CHECK_THROWS_AS(change_basis(l2, Matrix{{1, 0, 0}, {0, 0, 0}, {0, 0, 1}}), SingularMatrix);
}

TEST_CASE("change_basis is functorial and preserves the Leibniz status") {
  std::mt19937_64 rng(21);
  const AlgebraTable a = instantiate("L9", {{"gamma", q("3")}});
  const AlgebraTable broken = table(2, {{0, 0, 0, Scalar(1)}, {0, 1, 1, Scalar(1)}});
  for (int round = 0; round < 10; ++round) {
    const Matrix p = testing::random_invertible(rng, 4);
    const Matrix r = testing::random_invertible(rng, 4);
    CHECK(change_basis(change_basis(a, p), r) == change_basis(a, r * p));
    CHECK(leibniz_check(change_basis(a, p)).pass);
    const Matrix s = testing::random_invertible(rng, 2);
    CHECK(leibniz_check(change_basis(broken, s)).pass == leibniz_check(broken).pass);
  }
}

TEST_CASE("product_space") {
  const AlgebraTable l6 = instantiate("lambda6", {});
  const Subspace sq = product_space(l6, Subspace::whole(3), Subspace::whole(3));
  CHECK(sq == Subspace::span(3, {unit_vector(3, 1), unit_vector(3, 2)}));
  CHECK(product_space(AlgebraTable::abelian(3), Subspace::whole(3), Subspace::whole(3)).dim() == 0);
  const AlgebraTable l1 = instantiate("L1", {{"gamma", q("1")}});
  CHECK(product_space(l1, Subspace::whole(4), Subspace::whole(4)) ==
        Subspace::span(4, {unit_vector(4, 0), unit_vector(4, 1), unit_vector(4, 2)}));
}

TEST_CASE("product_space is monotone and squares lie in the right annihilator") {
  for (const char* id : {"L2", "L15", "L36", "R3"}) {
    const auto& f = find_family(id);
    ParamMap params;
    for (const auto& p : f.params) params[p] = q("2");
    const AlgebraTable a = instantiate(id, params);
    const std::size_t n = a.dim();
    const Subspace small = Subspace::span(n, {unit_vector(n, 0)});
    const Subspace big = Subspace::span(n, {unit_vector(n, 0), unit_vector(n, n - 1)});
    const Subspace whole = Subspace::whole(n);
    CHECK(product_space(a, big, whole).contains(product_space(a, small, whole)));
    const Subspace ra = right_annihilator(a);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(ra.contains(a.product(i, i)));
      for (std::size_t j = 0; j < n; ++j) CHECK(ra.contains(a.product(i, j) + a.product(j, i)));
    }
  }
}

TEST_CASE("assemble_extension") {
  const Scalar g = q("2");
  const Matrix rx = Matrix::diagonal(std::vector<Scalar>{Scalar(1), g, Scalar(1) + g});
  const std::vector<Vector> left{Scalar(-1) * unit_vector(4, 0), -g * unit_vector(4, 1), -(Scalar(1) + g) * unit_vector(4, 2)};
  const AlgebraTable built = assemble_extension(instantiate("lambda3", {}), rx, left, zero_vector(3));
  CHECK(built == instantiate("L1", {{"gamma", g}}));

  const std::vector<Vector> zero_left(3, zero_vector(4));
  CHECK(assemble_extension(AlgebraTable::abelian(3), Matrix(3, 3), zero_left, zero_vector(3)) ==
        AlgebraTable::abelian(4));
  const Matrix jordan{{1, 0, 0}, {1, 1, 0}, {0, 1, 1}};
  CHECK(assemble_extension(AlgebraTable::abelian(3), jordan, zero_left, zero_vector(3)) == instantiate("L41", {}));
}
