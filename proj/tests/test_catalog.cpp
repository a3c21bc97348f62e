#include <algorithm>
#include <set>

#include "doctest.h"
#include "leibniz/catalog.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/structure.hpp"

using namespace leibniz;

namespace {

Scalar q(const char* s) { return Scalar::parse(s); }

bool listed(const std::string& id) {
  const auto& all = list_families();
  return std::any_of(all.begin(), all.end(), [&](const FamilySpec& f) { return f.id == id; });
}

}  // namespace

TEST_CASE("catalog listing") {
  CHECK(listed("L44"));
  CHECK(listed("abelian_n"));
  CHECK(listed("lambda4p_beta"));
  CHECK(find_family("sl2c").dim == 4);
  CHECK(find_family("abelian_n").dim == 0);
  std::set<std::string> ids;
  for (const auto& f : list_families()) CHECK(ids.insert(f.id).second);
  CHECK_THROWS_AS(find_family("L99"), UnknownFamily);
}

TEST_CASE("instantiate") {
  const AlgebraTable l1 = instantiate("L1", {{"gamma", q("2")}});
  CHECK(l1.dim() == 4);
  CHECK(l1.coeff(0, 1, 2) == Scalar(1));
  CHECK(l1.coeff(1, 0, 2) == Scalar(-1));
  CHECK(l1.coeff(1, 3, 1) == Scalar(2));
  CHECK(l1.coeff(2, 3, 2) == Scalar(3));
  CHECK(l1.coeff(3, 2, 2) == Scalar(-3));
  CHECK(l1.entries().size() == 8);

  const AlgebraTable l4 = instantiate("lambda4", {{"alpha", q("-2")}});
  CHECK(l4.coeff(1, 1, 2) == Scalar(-2));
  // A zero coefficient is simply absent from the table.
  CHECK(instantiate("lambda4", {{"alpha", q("0")}}).entries().size() == 2);

  CHECK(instantiate("abelian_n", {{"n", q("3")}}) == AlgebraTable::abelian(3));
}

TEST_CASE("instantiate rejects bad parameters") {
  CHECK_THROWS_AS(instantiate("L10", {{"delta", q("0")}}), ConstraintViolation);
  CHECK_NOTHROW(instantiate("L10", {{"delta", q("1")}}));
  CHECK_THROWS_AS(instantiate("L21", {{"mu2", q("1")}, {"mu3", q("0")}}), ConstraintViolation);
  CHECK_THROWS_AS(instantiate("lambda4p_beta", {{"beta", q("1")}}), ConstraintViolation);
  CHECK_THROWS_AS(instantiate("nope", {}), UnknownFamily);
  CHECK_THROWS(instantiate("L1", {}));
}

TEST_CASE("claimed profiles") {
  const auto r2 = claimed_profile("R2");
  CHECK(r2.solvable);
  CHECK_FALSE(r2.nilpotent);
  REQUIRE(r2.nilradical_dim.has_value());
  CHECK(*r2.nilradical_dim == 2);
  const auto l43 = claimed_profile("L43");
  REQUIRE(l43.nilradical_dim.has_value());
  CHECK(*l43.nilradical_dim == 3);
  CHECK_FALSE(claimed_profile("sl2c").solvable);
}

TEST_CASE("claims agree with computation") {
  const ParamMap p{{"gamma", q("3")}};
  const VerifyReport ok = verify_entry("L9", p);
  CHECK(ok.pass());
  CHECK_FALSE(ok.checks.empty());

  // Adding [e3, e4] = e3 on top of the L9 table breaks the identity.
  const AlgebraTable l9 = instantiate("L9", p);
  std::vector<AlgebraTable::Entry> entries = l9.entries();
  for (auto& e : entries)
    if (e.i == 2 && e.j == 3) e.c = Scalar(1);
  const VerifyReport bad = verify_table("L9", AlgebraTable(4, entries), p);
  CHECK_FALSE(bad.pass());
  const auto leib = std::find_if(bad.checks.begin(), bad.checks.end(), [](const VerifyCheck& c) { return c.name == "leibniz"; });
  REQUIRE(leib != bad.checks.end());
  CHECK_FALSE(leib->pass);
}

TEST_CASE("every grid entry instantiates and satisfies its claims") {
  const auto grid = sample_grid();
  CHECK(grid.size() >= 120);
  for (const auto& g : grid) {
    INFO(entry_name(g));
    const VerifyReport r = verify_entry(g.id, g.params);
    CHECK(r.pass());
  }
}

TEST_CASE("parameter text round trip") {
  const ParamMap p = parse_params("mu2=1/2,mu3=-1i");
  CHECK(p.at("mu2") == q("1/2"));
  CHECK(p.at("mu3") == Scalar(0, -1));
  CHECK(parse_params(format_params(p)) == p);
  CHECK_THROWS_AS(parse_params("mu2"), ParseError);
}

TEST_CASE("canonical parameters") {
  // The identification beta -> 1/beta fixes one representative per orbit.
  const ParamMap a = canonical_params("lambda4p_beta", {{"beta", q("2")}});
  const ParamMap b = canonical_params("lambda4p_beta", {{"beta", q("1/2")}});
  CHECK(a == b);
  CHECK(canonical_params("lambda6", {}).empty());
  const ParamMap l20a = canonical_params("L20", {{"mu2", q("2")}, {"mu3", q("3")}});
  const ParamMap l20b = canonical_params("L20", {{"mu2", q("3")}, {"mu3", q("2")}});
  CHECK(l20a == l20b);
}
