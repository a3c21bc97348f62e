#pragma once

#include <string>

#include "json.hpp"
#include "leibniz/algebra.hpp"
#include "leibniz/catalog.hpp"
#include "leibniz/iso.hpp"
#include "leibniz/structure.hpp"

namespace leibniz {

/// Insertion-ordered JSON keeps output byte-stable and in the documented field order.
using Json = nlohmann::ordered_json;

/// {"dim": n, "labels": [...], "table": [{"i","j","k","c"}]} with 1-based indices.
Json table_to_json(const AlgebraTable& a);
/// Throws ParseError on malformed documents, bad indices or bad scalars.
AlgebraTable table_from_json(const Json& doc);
AlgebraTable parse_table(const std::string& text);

Json matrix_to_json(const Matrix& m);
Json subspace_to_json(const Subspace& s);
/// {"dims": [...], "index": n | "infinite"}
Json series_to_json(const SeriesProfile& s);
/// {"dim": k, "basis": [[row-major scalars], ...]}
Json derivations_to_json(const DerivationSpace& ds);
Json max_nil_to_json(const MaxNilIndependent& m);
Json params_to_json(const ParamMap& p);

Json family_to_json(const FamilySpec& f);
Json verify_to_json(const VerifyReport& r);
Json fingerprint_to_json(const Fingerprint& f);
Json search_to_json(const SearchResult& r);
Json classify_to_json(const ClassifyResult& r);
/// Array of {"pair": [A, B], "verdict": ..., "witness": ...}.
Json census_to_json(const CensusReport& r);

std::string verdict_name(SearchVerdict v);
std::string verdict_name(ClassifyVerdict v);
std::string verdict_name(CensusVerdict v);

}  // namespace leibniz
