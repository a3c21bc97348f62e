#include "leibniz/json_io.hpp"

#include "leibniz/errors.hpp"

namespace leibniz {

namespace {

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

std::size_t index_field(const Json& t, const char* key, std::size_t dim) {
  if (!t.contains(key) || !t.at(key).is_number_integer()) throw ParseError(std::string("table entry lacks integer '") + key + "'");
  const auto v = t.at(key).get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > dim)
    throw ParseError(std::string("table index '") + key + "' = " + std::to_string(v) + " outside 1.." + std::to_string(dim));
  return static_cast<std::size_t>(v - 1);
}

}  // namespace

Json table_to_json(const AlgebraTable& a) {
  Json labels = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) labels.push_back(a.label(i));
  Json table = Json::array();
  for (const auto& e : a.entries())
    table.push_back(Json{{"i", e.i + 1}, {"j", e.j + 1}, {"k", e.k + 1}, {"c", e.c.str()}});
  return Json{{"dim", a.dim()}, {"labels", labels}, {"table", table}};
}

AlgebraTable table_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("table document must be a JSON object");
  if (!doc.contains("dim") || !doc.at("dim").is_number_integer() || doc.at("dim").get<long long>() < 1)
    throw ParseError("table document needs a positive integer 'dim'");
  const auto n = doc.at("dim").get<std::size_t>();
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    if (!doc.at("labels").is_array() || doc.at("labels").size() != n)
      throw ParseError("'labels' must be an array of " + std::to_string(n) + " strings");
    for (const auto& l : doc.at("labels")) {
      if (!l.is_string()) throw ParseError("'labels' must contain strings");
      labels.push_back(l.get<std::string>());
    }
  }
  std::vector<AlgebraTable::Entry> entries;
  if (doc.contains("table")) {
    if (!doc.at("table").is_array()) throw ParseError("'table' must be an array");
    for (const auto& t : doc.at("table")) {
      if (!t.is_object()) throw ParseError("table entries must be objects");
      AlgebraTable::Entry e;
      e.i = index_field(t, "i", n);
      e.j = index_field(t, "j", n);
      e.k = index_field(t, "k", n);
      if (!t.contains("c")) throw ParseError("table entry lacks 'c'");
      const Json& c = t.at("c");
      if (c.is_string()) e.c = Scalar::parse(c.get<std::string>());
      else if (c.is_number_integer()) e.c = Scalar(c.get<long>());
      else throw ParseError("coefficient 'c' must be a scalar string or an integer");
      entries.push_back(std::move(e));
    }
  }
  return AlgebraTable(n, std::move(entries), std::move(labels));
}

AlgebraTable parse_table(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return table_from_json(doc);
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r)));
  return out;
}

Json subspace_to_json(const Subspace& s) {
  Json basis = Json::array();
  for (const auto& v : s.vectors()) basis.push_back(vector_to_json(v));
  return Json{{"dim", s.dim()}, {"basis", basis}};
}

Json series_to_json(const SeriesProfile& s) {
  Json out{{"dims", s.dims}};
  if (s.index) out["index"] = *s.index;
  else out["index"] = "infinite";
  return out;
}

Json derivations_to_json(const DerivationSpace& ds) {
  Json basis = Json::array();
  for (const auto& m : ds.basis) {
    Json flat = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) flat.push_back(m(r, c).str());
    basis.push_back(flat);
  }
  return Json{{"dim", ds.dim()}, {"basis", basis}};
}

Json max_nil_to_json(const MaxNilIndependent& m) {
  Json cert = Json::array();
  for (const auto& d : m.certificate) cert.push_back(matrix_to_json(d));
  return Json{{"lower_bound", m.lower_bound}, {"upper_bound", m.upper_bound}, {"exact", m.exact}, {"certificate", cert}};
}

Json params_to_json(const ParamMap& p) {
  Json out = Json::object();
  for (const auto& [k, v] : p) out[k] = v.str();
  return out;
}

Json family_to_json(const FamilySpec& f) {
  Json table = Json::array();
  for (const auto& s : f.table) table.push_back(Json{{"i", s.i + 1}, {"j", s.j + 1}, {"k", s.k + 1}, {"c", s.c.text()}});
  Json claimed{{"solvable", f.claimed.solvable}, {"nilpotent", f.claimed.nilpotent}};
  claimed["nilradical_dim"] = f.claimed.nilradical_dim ? Json(*f.claimed.nilradical_dim) : Json(nullptr);
  claimed["nilradical"] = f.claimed.nilradical ? Json(*f.claimed.nilradical) : Json(nullptr);
  Json out{{"id", f.id}, {"display", f.display}, {"dim", f.dim}, {"labels", f.labels}, {"params", f.params},
           {"constraint", f.constraint.text()}, {"claimed", claimed}, {"table", table}};
  if (!f.note.empty()) out["note"] = f.note;
  return out;
}

Json verify_to_json(const VerifyReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return Json{{"id", r.id}, {"params", params_to_json(r.params)}, {"pass", r.pass()}, {"checks", checks}};
}

Json fingerprint_to_json(const Fingerprint& f) {
  Json out = Json::object();
  for (const auto& [k, v] : f.components()) out[k] = v;
  return out;
}

std::string verdict_name(SearchVerdict v) {
  switch (v) {
    case SearchVerdict::Found: return "Found";
    case SearchVerdict::Incompatible: return "Incompatible";
    case SearchVerdict::NotFound: return "NotFound";
  }
  return "";
}

std::string verdict_name(ClassifyVerdict v) {
  switch (v) {
    case ClassifyVerdict::Matched: return "Matched";
    case ClassifyVerdict::NonSolvable: return "NonSolvable";
    case ClassifyVerdict::OutOfScopeNilpotent: return "OutOfScopeNilpotent";
    case ClassifyVerdict::Unmatched: return "Unmatched";
  }
  return "";
}

std::string verdict_name(CensusVerdict v) {
  switch (v) {
    case CensusVerdict::Distinct: return "Distinct";
    case CensusVerdict::Isomorphic: return "Isomorphic";
    case CensusVerdict::Undecided: return "Undecided";
  }
  return "";
}

Json search_to_json(const SearchResult& r) {
  Json out{{"verdict", verdict_name(r.verdict)}};
  switch (r.verdict) {
    case SearchVerdict::Found: out["certificate"] = matrix_to_json(*r.certificate); break;
    case SearchVerdict::Incompatible: out["invariant"] = r.invariant; break;
    case SearchVerdict::NotFound: out["exhaustive"] = r.exhaustive; break;
  }
  out["nodes"] = r.nodes;
  return out;
}

Json classify_to_json(const ClassifyResult& r) {
  Json out{{"verdict", verdict_name(r.verdict)}};
  if (!r.family.empty()) out["family"] = r.family;
  if (r.verdict == ClassifyVerdict::Matched) out["params"] = params_to_json(r.params);
  if (r.certificate) out["certificate"] = matrix_to_json(*r.certificate);
  if (!r.report.empty()) out["report"] = r.report;
  if (r.nilradical) {
    out["nilradical"] = subspace_to_json(*r.nilradical);
    Json comp = Json::array();
    for (const auto& v : r.complement) comp.push_back(vector_to_json(v));
    out["complement"] = comp;
  }
  return out;
}

Json census_to_json(const CensusReport& r) {
  Json out = Json::array();
  for (const auto& p : r.pairs) {
    Json e{{"pair", Json::array({r.names[p.a], r.names[p.b]})}, {"verdict", verdict_name(p.verdict)}};
    if (p.verdict == CensusVerdict::Isomorphic) e["witness"] = matrix_to_json(*p.certificate);
    else e["witness"] = p.witness;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace leibniz
