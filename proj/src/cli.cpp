#include "leibniz/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/json_io.hpp"

namespace leibniz::cli {

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::string family;
  std::string params;
  std::string target;
  std::string target_params;
  std::size_t budget = 0;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string grid;
  unsigned threads = 0;
  bool max_nil = false;
  std::string id;
};

/// Usage-level failures (bad files, missing sources) that map to exit 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Source {
  AlgebraTable table;
  std::string name;
};

Source from_family(const std::string& id, const std::string& params) {
  const ParamMap p = parse_params(params);
  return {instantiate(id, p), entry_name({id, p})};
}

std::vector<Source> sources(const Options& o) {
  std::vector<Source> out;
  for (const auto& path : o.inputs) out.push_back({parse_table(read_file(path)), path});
  if (!o.family.empty()) out.push_back(from_family(o.family, o.params));
  if (!o.target.empty()) out.push_back(from_family(o.target, o.target_params));
  return out;
}

Source single_source(const Options& o) {
  auto s = sources(o);
  if (s.size() != 1) throw UsageError("exactly one of --input or --family is required");
  return std::move(s[0]);
}

void print_aligned(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  for (const auto& [k, v] : rows) out << k << ":" << std::string(w - k.size() + 1, ' ') << v << "\n";
}

std::string vector_text(const Vector& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].str();
  return s + "]";
}

void print_matrix(std::ostream& out, const Matrix& m, const std::string& indent) {
  for (std::size_t r = 0; r < m.rows(); ++r) out << indent << vector_text(m.row(r)) << "\n";
}

std::string term_text(const Scalar& c, const std::string& label) {
  if (c.is_one()) return label;
  if (c == Scalar(-1)) return "-" + label;
  if (c.is_real() || c.re() == 0) return c.str() + "*" + label;
  return "(" + c.str() + ")*" + label;
}

void print_table(std::ostream& out, const AlgebraTable& a) {
  out << "dim " << a.dim() << "\n";
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (a.product_is_zero(i, j)) continue;
      std::string rhs;
      for (std::size_t k = 0; k < a.dim(); ++k) {
        const Scalar& c = a.coeff(i, j, k);
        if (c.is_zero()) continue;
        std::string t = term_text(c, a.label(k));
        if (rhs.empty()) rhs = t;
        else if (t[0] == '-') rhs += " - " + t.substr(1);
        else rhs += " + " + t;
      }
      out << "[" << a.label(i) << ", " << a.label(j) << "] = " << rhs << "\n";
    }
}

std::string subspace_text(const Subspace& s) {
  std::string out = "dim " + std::to_string(s.dim());
  const auto vs = s.vectors();
  if (!vs.empty()) {
    out += " span {";
    for (std::size_t k = 0; k < vs.size(); ++k) out += (k ? ", " : "") + vector_text(vs[k]);
    out += "}";
  }
  return out;
}

std::string series_text(const SeriesProfile& s) {
  std::string out = "(";
  for (std::size_t k = 0; k < s.dims.size(); ++k) out += (k ? ", " : "") + std::to_string(s.dims[k]);
  out += ") index ";
  out += s.index ? std::to_string(*s.index) : "infinite";
  return out;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

SearchOptions search_options(const Options& o) {
  SearchOptions s;
  s.budget = o.budget;
  s.seed = o.seed;
  return s;
}

// --- verbs -----------------------------------------------------------------

int cmd_check(const Options& o, std::ostream& out) {
  const Source src = single_source(o);
  const auto lc = leibniz_check(src.table);
  std::optional<VerifyReport> report;
  if (!o.family.empty()) report = verify_table(o.family, src.table, parse_params(o.params));
  const bool pass = lc.pass && (!report || report->pass());
  if (o.format == "json") {
    Json j{{"leibniz", {{"pass", lc.pass}}}};
    if (!lc.pass) {
      j["leibniz"]["witness"] = Json::array({src.table.label(lc.witness[0]), src.table.label(lc.witness[1]),
                                            src.table.label(lc.witness[2])});
      Json d = Json::array();
      for (const auto& x : lc.defect) d.push_back(x.str());
      j["leibniz"]["defect"] = d;
    }
    if (report) j["claims"] = verify_to_json(*report);
    j["pass"] = pass;
    emit(out, j);
  } else {
    if (lc.pass) {
      out << "leibniz: pass\n";
    } else {
      out << "leibniz: fail at (" << src.table.label(lc.witness[0]) << ", " << src.table.label(lc.witness[1]) << ", "
          << src.table.label(lc.witness[2]) << ") defect " << vector_text(lc.defect) << "\n";
    }
    if (report)
      for (const auto& c : report->checks)
        if (c.name != "leibniz") out << c.name << ": " << (c.pass ? "pass" : "fail") << " (" << c.detail << ")\n";
  }
  return pass ? kOk : kViolation;
}

int cmd_invariants(const Options& o, std::ostream& out) {
  const Source src = single_source(o);
  const AlgebraTable& a = src.table;
  const auto lcs = lower_central_series(a);
  const auto ds = derived_series(a);
  const bool solvable = ds.index.has_value();
  std::optional<Subspace> nil;
  std::string nil_note;
  if (solvable) {
    try {
      nil = nilradical(a);
    } catch (const NilradicalUndetermined& e) {
      nil_note = "undetermined";
    }
  } else {
    nil_note = "none (not solvable)";
  }
  const Subspace ra = right_annihilator(a), la = left_annihilator(a), z = center(a);
  const std::size_t der = derivation_space(a).dim();
  const bool lie = is_lie(a).lie;
  if (o.format == "json") {
    Json j{{"dim", a.dim()},
           {"is_lie", lie},
           {"lower_central", series_to_json(lcs)},
           {"derived", series_to_json(ds)},
           {"nilpotent", lcs.index.has_value()},
           {"solvable", solvable},
           {"right_annihilator", subspace_to_json(ra)},
           {"left_annihilator", subspace_to_json(la)},
           {"center", subspace_to_json(z)},
           {"derivation_dim", der}};
    j["nilradical"] = nil ? subspace_to_json(*nil) : Json(nil_note);
    emit(out, j);
  } else {
    print_aligned(out, {{"dim", std::to_string(a.dim())},
                        {"is_lie", lie ? "true" : "false"},
                        {"lower_central", series_text(lcs)},
                        {"derived", series_text(ds)},
                        {"nilpotent", lcs.index ? "true" : "false"},
                        {"solvable", solvable ? "true" : "false"},
                        {"right_annihilator", subspace_text(ra)},
                        {"left_annihilator", subspace_text(la)},
                        {"center", subspace_text(z)},
                        {"derivation_dim", std::to_string(der)},
                        {"nilradical", nil ? subspace_text(*nil) : nil_note}});
  }
  return kOk;
}

int cmd_der(const Options& o, std::ostream& out) {
  const Source src = single_source(o);
  const auto ds = derivation_space(src.table);
  std::optional<MaxNilIndependent> mn;
  if (o.max_nil) mn = max_nil_independent(src.table, o.budget, o.seed);
  if (o.format == "json") {
    Json j = derivations_to_json(ds);
    if (mn) j["max_nil_independent"] = max_nil_to_json(*mn);
    emit(out, j);
  } else {
    out << "dim: " << ds.dim() << "\n";
    for (std::size_t k = 0; k < ds.basis.size(); ++k) {
      out << "d" << k + 1 << ":\n";
      print_matrix(out, ds.basis[k], "  ");
    }
    if (mn) {
      out << "max_nil_independent: " << mn->lower_bound;
      if (!mn->exact) out << " (upper bound " << mn->upper_bound << ")";
      out << (mn->exact ? " exact" : "") << "\n";
    }
  }
  return kOk;
}

int cmd_nilradical(const Options& o, std::ostream& out) {
  const Source src = single_source(o);
  const Subspace nil = nilradical(src.table);
  const AlgebraTable restricted = restrict_to(src.table, nil);
  if (o.format == "json") {
    emit(out, Json{{"nilradical", subspace_to_json(nil)}, {"table", table_to_json(restricted)}});
  } else {
    out << "nilradical: " << subspace_text(nil) << "\n";
    print_table(out, restricted);
  }
  return kOk;
}

int cmd_catalog_list(const Options& o, std::ostream& out) {
  const auto& fams = list_families();
  if (o.format == "json") {
    Json j = Json::array();
    for (const auto& f : fams)
      j.push_back(Json{{"id", f.id}, {"display", f.display}, {"dim", f.dim}, {"params", f.params},
                       {"constraint", f.constraint.text()}});
    emit(out, j);
    return kOk;
  }
  std::size_t w = 2;
  for (const auto& f : fams) w = std::max(w, f.id.size());
  for (const auto& f : fams) {
    std::string params;
    for (const auto& p : f.params) params += (params.empty() ? "" : ",") + p;
    out << f.id << std::string(w - f.id.size() + 2, ' ') << "dim " << (f.dim ? std::to_string(f.dim) : "n");
    if (!params.empty()) out << "  params " << params;
    if (!f.constraint.text().empty()) out << "  " << f.constraint.text();
    out << "\n";
  }
  return kOk;
}

int cmd_catalog_show(const Options& o, std::ostream& out) {
  const FamilySpec& f = find_family(o.id);
  if (o.format == "json") {
    emit(out, family_to_json(f));
    return kOk;
  }
  std::string params;
  for (const auto& p : f.params) params += (params.empty() ? "" : ",") + p;
  print_aligned(out, {{"id", f.id},
                      {"display", f.display},
                      {"dim", f.dim ? std::to_string(f.dim) : "n"},
                      {"params", params.empty() ? "none" : params},
                      {"constraint", f.constraint.text().empty() ? "none" : f.constraint.text()},
                      {"solvable", f.claimed.solvable ? "true" : "false"},
                      {"nilpotent", f.claimed.nilpotent ? "true" : "false"},
                      {"nilradical", f.claimed.nilradical.value_or("-")}});
  for (const auto& s : f.table)
    out << "[" << f.labels.at(s.i) << ", " << f.labels.at(s.j) << "] += (" << s.c.text() << ")*" << f.labels.at(s.k)
        << "\n";
  if (!f.note.empty()) out << "note: " << f.note << "\n";
  return kOk;
}

int cmd_catalog_instantiate(const Options& o, std::ostream& out) {
  const AlgebraTable t = instantiate(o.id, parse_params(o.params));
  if (o.format == "json") emit(out, table_to_json(t));
  else print_table(out, t);
  return kOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const Source src = single_source(o);
  const ClassifyResult r = classify(src.table, search_options(o));
  if (o.format == "json") {
    emit(out, classify_to_json(r));
  } else {
    std::vector<std::pair<std::string, std::string>> rows{{"verdict", verdict_name(r.verdict)}};
    if (!r.family.empty()) rows.emplace_back("family", r.family);
    if (!r.params.empty()) rows.emplace_back("params", format_params(r.params));
    if (r.nilradical) rows.emplace_back("nilradical", subspace_text(*r.nilradical));
    if (!r.report.empty()) rows.emplace_back("report", r.report);
    print_aligned(out, rows);
    if (r.certificate) {
      out << "certificate:\n";
      print_matrix(out, *r.certificate, "  ");
    }
  }
  return r.verdict == ClassifyVerdict::Unmatched ? kUndecided : kOk;
}

int cmd_iso(const Options& o, std::ostream& out) {
  const auto s = sources(o);
  if (s.size() != 2) throw UsageError("iso needs exactly two algebras (--input, --family, --target)");
  const SearchResult r = search_isomorphism(s[0].table, s[1].table, search_options(o));
  if (o.format == "json") {
    Json j = search_to_json(r);
    j["source"] = s[0].name;
    j["target"] = s[1].name;
    emit(out, j);
  } else {
    print_aligned(out, {{"source", s[0].name}, {"target", s[1].name}, {"verdict", verdict_name(r.verdict)}});
    if (r.verdict == SearchVerdict::Incompatible) out << "invariant: " << r.invariant << "\n";
    if (r.verdict == SearchVerdict::NotFound)
      out << "search: " << (r.exhaustive ? "exhaustive" : "budget exhausted") << " after " << r.nodes << " nodes\n";
    if (r.certificate) {
      out << "certificate:\n";
      print_matrix(out, *r.certificate, "  ");
    }
  }
  return r.verdict == SearchVerdict::NotFound ? kUndecided : kOk;
}

int cmd_census(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string text = o.grid.empty() ? std::string() : read_file(o.grid);
  const auto grid = sample_grid(text);
  const CensusReport r = census(grid, search_options(o), o.threads);
  const std::string summary = std::to_string(r.entries.size()) + " entries, " + std::to_string(r.pairs.size()) +
                              " pairs: " + std::to_string(r.distinct) + " distinct, " +
                              std::to_string(r.isomorphic) + " isomorphic (" +
                              std::to_string(r.cross_family_isomorphic) + " across families), " +
                              std::to_string(r.undecided) + " undecided (" +
                              std::to_string(r.cross_family_undecided) + " across families)";
  if (o.format == "json") {
    emit(out, census_to_json(r));
    err << summary << "\n";
  } else {
    out << summary << "\n";
    for (const auto& p : r.pairs) {
      if (p.verdict == CensusVerdict::Distinct) continue;
      out << verdict_name(p.verdict) << "  " << r.names[p.a] << "  " << r.names[p.b];
      if (p.verdict == CensusVerdict::Undecided) out << "  " << p.witness;
      out << "\n";
      if (p.certificate) print_matrix(out, *p.certificate, "    ");
    }
  }
  return r.undecided ? kUndecided : kOk;
}

int cmd_fingerprint(const Options& o, std::ostream& out) {
  const Source src = single_source(o);
  const Fingerprint f = fingerprint(src.table);
  if (o.format == "json") emit(out, fingerprint_to_json(f));
  else print_aligned(out, f.components());
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  o.budget = default_budget();
  CLI::App app{"Exact workbench for low-dimensional Leibniz algebras over Q(i)", "leibniz-lab"};
  app.require_subcommand(1);

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto add_source = [&](CLI::App* c, bool many) {
    auto* in = c->add_option("--input", o.inputs, "Algebra table JSON file");
    if (!many) in->expected(1);
    c->add_option("--family", o.family, "Catalog family id");
    c->add_option("--params", o.params, "Family parameters k=v,...");
  };
  auto add_search = [&](CLI::App* c) {
    c->add_option("--budget", o.budget, "Search node budget (default from LEIBNIZ_LAB_BUDGET or 100000)");
    c->add_option("--seed", o.seed, "Random seed");
  };

  auto* check = app.add_subcommand("check", "Check the Leibniz identity (and catalog claims with --family)");
  add_source(check, false);
  add_format(check);
  auto* inv = app.add_subcommand("invariants", "Series, annihilators, centre, derivation dimension, nilradical");
  add_source(inv, false);
  add_format(inv);
  auto* der = app.add_subcommand("der", "Derivation space");
  add_source(der, false);
  add_format(der);
  add_search(der);
  der->add_flag("--max-nil", o.max_nil, "Also bound the number of nil-independent derivations");
  auto* nil = app.add_subcommand("nilradical", "Nilradical and its restricted table");
  add_source(nil, false);
  add_format(nil);

  auto* cat = app.add_subcommand("catalog", "Browse the family catalog");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "List every family");
  add_format(cat_list);
  auto* cat_show = cat->add_subcommand("show", "Show one family template");
  cat_show->add_option("id", o.id, "Family id")->required();
  add_format(cat_show);
  auto* cat_inst = cat->add_subcommand("instantiate", "Instantiate a family at parameters");
  cat_inst->add_option("id", o.id, "Family id")->required();
  cat_inst->add_option("--params", o.params, "Family parameters k=v,...");
  add_format(cat_inst);

  auto* cls = app.add_subcommand("classify", "Classify a table against the catalog");
  add_source(cls, false);
  add_format(cls);
  add_search(cls);
  auto* iso = app.add_subcommand("iso", "Search for an isomorphism between two algebras");
  add_source(iso, true);
  iso->add_option("--target", o.target, "Second catalog family id");
  iso->add_option("--target-params", o.target_params, "Parameters of the --target family");
  add_format(iso);
  add_search(iso);
  auto* cen = app.add_subcommand("census", "Pairwise comparison over the sample grid");
  cen->add_option("--grid", o.grid, "Sample grid JSON file (default: built-in grid)");
  cen->add_option("--threads", o.threads, "Worker threads (0: hardware concurrency)");
  add_format(cen);
  add_search(cen);
  auto* fp = app.add_subcommand("fingerprint", "Basis-independent invariants");
  add_source(fp, false);
  add_format(fp);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*inv) return cmd_invariants(o, out);
    if (*der) return cmd_der(o, out);
    if (*nil) return cmd_nilradical(o, out);
    if (*cat_list) return cmd_catalog_list(o, out);
    if (*cat_show) return cmd_catalog_show(o, out);
    if (*cat_inst) return cmd_catalog_instantiate(o, out);
    if (*cls) return cmd_classify(o, out);
    if (*iso) return cmd_iso(o, out);
    if (*cen) return cmd_census(o, out, err);
    if (*fp) return cmd_fingerprint(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownFamily& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConstraintViolation& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NilradicalUndetermined& e) {
    err << "undetermined: " << e.what() << "\n";
    return kUndecided;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kViolation;
  }
  return kUsage;
}

}  // namespace leibniz::cli
