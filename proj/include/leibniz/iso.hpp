#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/catalog.hpp"
#include "leibniz/solver.hpp"

namespace leibniz {

/// Basis-independent invariants. Every component is preserved by change_basis,
/// so a differing component proves non-isomorphism.
struct Fingerprint {
  std::size_t dim = 0;
  std::vector<std::size_t> lower_central;
  std::vector<std::size_t> derived;
  std::size_t square_dim = 0;
  std::size_t right_annihilator_dim = 0;
  std::size_t derivation_dim = 0;
  bool lie = false;
  std::optional<std::size_t> nilradical_dim;  ///< absent when not solvable
  std::size_t square_cap_right_annihilator_dim = 0;
  std::size_t left_annihilator_dim = 0;
  std::size_t center_dim = 0;
  /// span{[x, x]}, spanned by the symmetrized products.
  std::size_t squares_dim = 0;
  /// {u : [u,v] + [v,u] = 0 for all v} and {u : [u,v] = [v,u] for all v}.
  std::size_t symmetric_radical_dim = 0;
  std::size_t antisymmetric_radical_dim = 0;
  /// Scale-free characteristic data of R_x on a codimension-one nilradical.
  std::string spectrum;
  /// Ranks and cosquare data of the bracket form when L^2 is central of dim 1.
  std::string square_form;
  /// Jordan rank profiles of R_x on the quotients of the nilradical's lower
  /// central series (codimension-one nilradical), where R_x is defined up to scale.
  std::string jordan;
  /// Scale-normalized characteristic data of R_x on characteristic ideals.
  std::string ideal_spectra;
  /// Rank data of the pencil L_x - t R_x from N/L^2 to L^2 modulo products.
  std::string pencil;
  /// Fingerprint of a proper nilradical (one level deep).
  std::shared_ptr<const Fingerprint> nilradical;
  /// Fingerprint of L / L^w, where L^w is the stable lower central term.
  std::shared_ptr<const Fingerprint> stable_quotient;

  /// (name, value) pairs in comparison order.
  std::vector<std::pair<std::string, std::string>> components() const;
};

Fingerprint fingerprint(const AlgebraTable& a);
/// Name of the first differing component, if any.
std::optional<std::string> first_difference(const Fingerprint& a, const Fingerprint& b);

struct IsoCertificate {
  Matrix p;
  std::string source_id;
  std::string target_id;
};

/// change_basis(a, p) == b. Throws SingularMatrix / DimensionMismatch.
bool verify_isomorphism(const AlgebraTable& a, const AlgebraTable& b, const Matrix& p);

enum class SearchVerdict { Found, Incompatible, NotFound };

struct SearchResult {
  SearchVerdict verdict = SearchVerdict::NotFound;
  std::optional<Matrix> certificate;  ///< Found: change_basis(a, p) == b
  std::string invariant;              ///< Incompatible: differing component
  bool exhaustive = false;            ///< NotFound: the search tree was fully explored
  std::size_t nodes = 0;
};

struct SearchOptions {
  std::size_t budget = kDefaultBudget;
  std::uint64_t seed = 1;
  long height_bound = kDefaultHeightBound;
};

SearchResult search_isomorphism(const AlgebraTable& a, const AlgebraTable& b, const SearchOptions& options = {});

enum class ClassifyVerdict { Matched, NonSolvable, OutOfScopeNilpotent, Unmatched };

struct ClassifyResult {
  ClassifyVerdict verdict = ClassifyVerdict::Unmatched;
  std::string family;  ///< Matched / NonSolvable
  ParamMap params;
  /// change_basis(input, certificate) == instantiate(family, params).
  std::optional<Matrix> certificate;
  std::string report;
  /// Decomposition L = N + Q (solvable input only).
  std::optional<Subspace> nilradical;
  std::vector<Vector> complement;
};

/// Throws NotLeibniz when the input fails the Leibniz identity.
ClassifyResult classify(const AlgebraTable& a, const SearchOptions& options = {});

/// "abelian_2" for abelian_n with n = 2, otherwise the family id.
std::string matched_name(const std::string& family, const ParamMap& params);

enum class CensusVerdict { Distinct, Isomorphic, Undecided };

struct CensusPair {
  std::size_t a = 0, b = 0;  ///< indices into CensusReport::entries
  CensusVerdict verdict = CensusVerdict::Undecided;
  std::string witness;        ///< Distinct: invariant name; otherwise a note
  std::optional<Matrix> certificate;
};

struct CensusReport {
  std::vector<GridEntry> entries;
  std::vector<std::string> names;
  std::vector<CensusPair> pairs;  ///< every unordered pair, sorted by (a, b)
  std::size_t distinct = 0, isomorphic = 0, undecided = 0;
  std::size_t cross_family_isomorphic = 0, cross_family_undecided = 0;
};

/// Pairwise comparison of every grid entry. Deterministic for a given seed
/// regardless of the thread count (0 means hardware concurrency).
CensusReport census(const std::vector<GridEntry>& grid, const SearchOptions& options = {}, unsigned threads = 0);

}  // namespace leibniz
