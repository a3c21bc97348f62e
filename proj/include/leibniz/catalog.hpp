#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/expression.hpp"

namespace leibniz {

namespace data {
std::string_view catalog_json();
std::string_view grid_json();
std::string_view identifications_json();
}  // namespace data

struct ClaimedProfile {
  bool solvable = true;
  bool nilpotent = false;
  std::optional<std::size_t> nilradical_dim;
  std::optional<std::string> nilradical;  ///< family id of the nilradical
};

struct FamilySpec {
  struct Slot {
    std::size_t i, j, k;  // 0-based
    Expression c;
  };

  std::string id;
  std::string display;
  /// 0 for abelian_n, whose dimension is the parameter n.
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<std::string> params;
  Constraint constraint;
  std::string note;
  ClaimedProfile claimed;
  std::vector<Slot> table;
};

/// Every catalog family in a fixed order.
const std::vector<FamilySpec>& list_families();
/// Throws UnknownFamily.
const FamilySpec& find_family(const std::string& id);

/// Throws UnknownFamily, or ConstraintViolation naming the violated predicate.
AlgebraTable instantiate(const std::string& id, const ParamMap& params);
/// Template coefficients as polynomials in the given parameter variables
/// (no constraint check). Returns (i, j, k, coefficient) slots.
struct SymbolicEntry {
  std::size_t i, j, k;
  Poly c;
};
std::vector<SymbolicEntry> instantiate_symbolic(const FamilySpec& f, const std::map<std::string, Poly>& params);

ClaimedProfile claimed_profile(const std::string& id);

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::string id;
  ParamMap params;
  std::vector<VerifyCheck> checks;
  bool pass() const;
};

/// Instantiates and checks the Leibniz identity, solvability, nilpotency and
/// the nilradical against the claimed profile.
VerifyReport verify_entry(const std::string& id, const ParamMap& params);
/// Same checks for an explicit table claimed to belong to family `id`.
VerifyReport verify_table(const std::string& id, const AlgebraTable& table, const ParamMap& params = {});

struct GridEntry {
  std::string id;
  ParamMap params;
};

/// "k=v,k=v" with values in the scalar grammar. Throws ParseError.
ParamMap parse_params(const std::string& text);
std::string format_params(const ParamMap& params);
/// Display name such as "L20(mu2=2,mu3=3)".
std::string entry_name(const GridEntry& e);

/// Sample grid from JSON (the embedded grid when text is empty), filtered by
/// family constraints, in catalog order.
std::vector<GridEntry> sample_grid(std::string_view json_text = {});
/// The fixed round-trip parameter point of a family.
ParamMap roundtrip_params(const std::string& id);

/// Parameter maps of a family that preserve its isomorphism class.
std::vector<std::map<std::string, Expression>> identifications(const std::string& id);
/// Smallest point of the orbit of params under identifications(id).
ParamMap canonical_params(const std::string& id, const ParamMap& params);

}  // namespace leibniz
