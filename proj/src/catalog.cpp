#include "leibniz/catalog.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/iso.hpp"
#include "leibniz/structure.hpp"

namespace leibniz {

namespace {

using nlohmann::json;

std::vector<FamilySpec> load_catalog() {
  const json doc = json::parse(data::catalog_json());
  std::vector<FamilySpec> out;
  for (const auto& f : doc.at("families")) {
    FamilySpec s;
    s.id = f.at("id").get<std::string>();
    s.display = f.value("display", s.id);
    s.dim = f.at("dim").get<std::size_t>();
    s.labels = f.value("labels", std::vector<std::string>{});
    s.params = f.value("params", std::vector<std::string>{});
    s.constraint = Constraint::parse(f.value("constraint", std::string()));
    s.note = f.value("note", std::string());
    const auto& c = f.at("claimed");
    s.claimed.solvable = c.at("solvable").get<bool>();
    s.claimed.nilpotent = c.at("nilpotent").get<bool>();
    if (!c.at("nilradical_dim").is_null()) s.claimed.nilradical_dim = c.at("nilradical_dim").get<std::size_t>();
    if (!c.at("nilradical").is_null()) s.claimed.nilradical = c.at("nilradical").get<std::string>();
    for (const auto& t : f.at("table")) {
      s.table.push_back({t.at("i").get<std::size_t>() - 1, t.at("j").get<std::size_t>() - 1,
                         t.at("k").get<std::size_t>() - 1, Expression::parse(t.at("c").get<std::string>())});
    }
    out.push_back(std::move(s));
  }
  return out;
}

void check_params(const FamilySpec& f, const ParamMap& params) {
  for (const auto& p : f.params)
    if (!params.count(p)) throw ConstraintViolation(f.id + ": missing parameter '" + p + "'");
  for (const auto& [k, v] : params)
    if (std::find(f.params.begin(), f.params.end(), k) == f.params.end())
      throw ConstraintViolation(f.id + ": unknown parameter '" + k + "'");
  if (auto bad = f.constraint.first_violation(params))
    throw ConstraintViolation(f.id + ": constraint " + *bad + " violated");
}

std::size_t abelian_dim(const ParamMap& params) {
  const Scalar& n = params.at("n");
  if (!n.is_real() || n.re().get_den() != 1 || n.re() < 1 || n.re() > 16)
    throw ConstraintViolation("abelian_n: n must be an integer between 1 and 16");
  return n.re().get_num().get_ui();
}

}  // namespace

const std::vector<FamilySpec>& list_families() {
  static const std::vector<FamilySpec> families = load_catalog();
  return families;
}

const FamilySpec& find_family(const std::string& id) {
  for (const auto& f : list_families())
    if (f.id == id) return f;
  throw UnknownFamily("unknown family '" + id + "'");
}

AlgebraTable instantiate(const std::string& id, const ParamMap& params) {
  const FamilySpec& f = find_family(id);
  check_params(f, params);
  if (f.id == "abelian_n") {
    const std::size_t n = abelian_dim(params);
    std::vector<std::string> labels;
    for (std::size_t k = 1; k <= n; ++k) labels.push_back("e" + std::to_string(k));
    return AlgebraTable(n, {}, labels);
  }
  std::vector<AlgebraTable::Entry> entries;
  for (const auto& s : f.table) entries.push_back({s.i, s.j, s.k, s.c.evaluate(params)});
  return AlgebraTable(f.dim, std::move(entries), f.labels);
}

std::vector<SymbolicEntry> instantiate_symbolic(const FamilySpec& f, const std::map<std::string, Poly>& params) {
  std::vector<SymbolicEntry> out;
  for (const auto& s : f.table) out.push_back({s.i, s.j, s.k, s.c.evaluate(params)});
  return out;
}

ClaimedProfile claimed_profile(const std::string& id) { return find_family(id).claimed; }

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

VerifyReport verify_entry(const std::string& id, const ParamMap& params) {
  return verify_table(id, instantiate(id, params), params);
}

VerifyReport verify_table(const std::string& id, const AlgebraTable& table, const ParamMap& params) {
  const FamilySpec& f = find_family(id);
  VerifyReport r;
  r.id = id;
  r.params = params;

  const auto lc = leibniz_check(table);
  {
    VerifyCheck c{"leibniz", lc.pass, "pass"};
    if (!lc.pass) {
      std::ostringstream os;
      os << "fails at (" << table.label(lc.witness[0]) << ", " << table.label(lc.witness[1]) << ", "
         << table.label(lc.witness[2]) << ") with defect (";
      for (std::size_t k = 0; k < lc.defect.size(); ++k) os << (k ? ", " : "") << lc.defect[k];
      os << ")";
      c.detail = os.str();
    }
    r.checks.push_back(c);
  }
  if (!lc.pass) return r;

  const bool solvable = is_solvable(table);
  const bool nilpotent = is_nilpotent_algebra(table);
  r.checks.push_back({"solvable", solvable == f.claimed.solvable, solvable ? "true" : "false"});
  r.checks.push_back({"nilpotent", nilpotent == f.claimed.nilpotent, nilpotent ? "true" : "false"});
  if (!solvable || !f.claimed.solvable) return r;

  const Subspace nil = nilradical(table);
  const std::size_t expected_dim = f.claimed.nilradical_dim.value_or(table.dim());
  r.checks.push_back({"nilradical_dim", nil.dim() == expected_dim, std::to_string(nil.dim())});
  if (f.claimed.nilradical && !nilpotent) {
    const ClassifyResult cr = classify(restrict_to(table, nil));
    const std::string got = cr.verdict == ClassifyVerdict::Matched ? matched_name(cr.family, cr.params) : "unmatched";
    r.checks.push_back({"nilradical_family", got == *f.claimed.nilradical,
                        cr.verdict == ClassifyVerdict::Matched && !cr.params.empty()
                            ? got + "(" + format_params(cr.params) + ")"
                            : got});
  }
  return r;
}

ParamMap parse_params(const std::string& text) {
  ParamMap out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    if (b == std::string::npos) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("parameter '" + item + "' is not of the form name=value");
    std::string name = item.substr(0, eq);
    name.erase(0, name.find_first_not_of(' '));
    name.erase(name.find_last_not_of(' ') + 1);
    std::string value = item.substr(eq + 1);
    value.erase(0, value.find_first_not_of(' '));
    value.erase(value.find_last_not_of(' ') + 1);
    if (name.empty()) throw ParseError("empty parameter name in '" + item + "'");
    out[name] = Scalar::parse(value);
  }
  return out;
}

std::string format_params(const ParamMap& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ",";
    out += k + "=" + v.str();
  }
  return out;
}

std::string entry_name(const GridEntry& e) {
  if (e.params.empty()) return e.id;
  // Parameters in the family's declared order.
  const FamilySpec& f = find_family(e.id);
  std::string out = e.id + "(";
  bool first = true;
  for (const auto& p : f.params) {
    if (!first) out += ",";
    first = false;
    out += p + "=" + e.params.at(p).str();
  }
  return out + ")";
}

std::vector<GridEntry> sample_grid(std::string_view json_text) {
  const json doc = json::parse(json_text.empty() ? data::grid_json() : json_text);
  const json& fams = doc.at("families");
  std::vector<GridEntry> out;
  for (const auto& f : list_families()) {
    if (f.params.empty()) {
      out.push_back({f.id, {}});
      continue;
    }
    if (!fams.contains(f.id)) continue;
    // Cartesian product over the declared parameter order.
    std::vector<ParamMap> points{ParamMap{}};
    for (const auto& p : f.params) {
      std::vector<ParamMap> next;
      for (const auto& base : points)
        for (const auto& v : fams.at(f.id).at(p)) {
          ParamMap m = base;
          m[p] = Scalar::parse(v.get<std::string>());
          next.push_back(std::move(m));
        }
      points = std::move(next);
    }
    std::set<std::string> seen;
    for (auto& pt : points) {
      if (f.constraint.first_violation(pt)) continue;
      if (!seen.insert(format_params(pt)).second) continue;
      out.push_back({f.id, std::move(pt)});
    }
  }
  return out;
}

ParamMap roundtrip_params(const std::string& id) {
  const FamilySpec& f = find_family(id);
  ParamMap out;
  if (f.params.empty()) return out;
  const json doc = json::parse(data::grid_json());
  for (const auto& [k, v] : doc.at("roundtrip").at(id).items()) out[k] = Scalar::parse(v.get<std::string>());
  return out;
}

std::vector<std::map<std::string, Expression>> identifications(const std::string& id) {
  static const json doc = json::parse(data::identifications_json());
  std::vector<std::map<std::string, Expression>> out;
  const json& fams = doc.at("families");
  if (!fams.contains(id)) return out;
  for (const auto& m : fams.at(id)) {
    std::map<std::string, Expression> map;
    for (const auto& [k, v] : m.items()) map.emplace(k, Expression::parse(v.get<std::string>()));
    out.push_back(std::move(map));
  }
  return out;
}

ParamMap canonical_params(const std::string& id, const ParamMap& params) {
  const FamilySpec& f = find_family(id);
  const auto maps = identifications(id);
  if (maps.empty()) return params;
  auto key = [&f](const ParamMap& p) {
    std::vector<Scalar> k;
    for (const auto& name : f.params) k.push_back(p.at(name));
    return k;
  };
  std::vector<ParamMap> orbit{params};
  for (std::size_t head = 0; head < orbit.size() && orbit.size() < 64; ++head) {
    for (const auto& m : maps) {
      ParamMap next = orbit[head];
      try {
        for (const auto& [k, e] : m) next[k] = e.evaluate(orbit[head]);
      } catch (const SingularMatrix&) {
        continue;
      }
      if (f.constraint.first_violation(next)) continue;
      if (std::none_of(orbit.begin(), orbit.end(), [&](const ParamMap& p) { return p == next; }))
        orbit.push_back(std::move(next));
    }
  }
  // Prefer small heights, then the scalar order.
  auto rank = [&](const ParamMap& p) {
    mpz_class h = 0;
    for (const auto& [k, v] : p) h = std::max(h, v.height());
    return h;
  };
  return *std::min_element(orbit.begin(), orbit.end(), [&](const ParamMap& a, const ParamMap& b) {
    const mpz_class ha = rank(a), hb = rank(b);
    if (ha != hb) return ha < hb;
    return key(a) < key(b);
  });
}

}  // namespace leibniz
