// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "leibniz/catalog.hpp"
#include "leibniz/iso.hpp"
#include "leibniz/structure.hpp"
#include "support.hpp"

using namespace leibniz;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;
std::set<int> selected;

void criterion(int number, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  if (!selected.empty() && !selected.count(number)) return;
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs >= limit_seconds) {
    o.pass = false;
    o.detail += "; exceeded " + std::to_string(static_cast<int>(limit_seconds)) + " s";
  }
  if (!o.pass) ++failures;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2f s", secs);
  std::cout << "criterion " << number << " [" << title << "]: " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail
            << "; " << timing << ")" << std::endl;
}

Scalar q(long n, long d = 1) { return Scalar(mpq_class(mpz_class(n), mpz_class(d))); }

// Family id reported by classify, counting the non-solvable verdict as a match.
std::string classified_id(const ClassifyResult& r) {
  if (r.verdict == ClassifyVerdict::Matched || r.verdict == ClassifyVerdict::NonSolvable) return r.family;
  return "<" + std::string(r.verdict == ClassifyVerdict::Unmatched ? "unmatched" : "nilpotent") + ">";
}

bool is_four_dim_solvable(const FamilySpec& f) { return f.dim == 4 && f.claimed.solvable && !f.claimed.nilpotent; }

}  // namespace

// Optional arguments restrict the run to the listed criterion numbers.
int main(int argc, char** argv) {
  for (int k = 1; k < argc; ++k) selected.insert(std::atoi(argv[k]));
  const auto grid = sample_grid();

  criterion(1, "catalog soundness", 10, [&] {
    std::size_t bad = 0;
    std::string first;
    for (const auto& g : grid) {
      if (!leibniz_check(instantiate(g.id, g.params)).pass) {
        if (!bad) first = entry_name(g);
        ++bad;
      }
    }
    std::ostringstream os;
    os << grid.size() << " tables, " << bad << " Leibniz failures";
    if (bad) os << " (first " << first << ")";
    return Outcome{grid.size() >= 120 && bad == 0, os.str()};
  });

  criterion(2, "derivation dimensions", 0, [&] {
    const std::vector<std::tuple<std::string, ParamMap, std::size_t>> cases{
        {"lambda1", {}, 9},
        {"lambda2", {}, 5},
        {"lambda3", {}, 6},
        {"lambda4p", {}, 4},
        {"lambda4p_beta", {{"beta", q(0)}}, 4},
        {"lambda4p_beta", {{"beta", q(1, 2)}}, 4},
        {"lambda4p_beta", {{"beta", q(-1, 3)}}, 4},
        {"lambda5", {}, 4},
        {"lambda6", {}, 3},
    };
    std::size_t bad = 0;
    std::string got;
    for (const auto& [id, p, want] : cases) {
      const std::size_t d = derivation_space(instantiate(id, p)).dim();
      got += (got.empty() ? "" : " ") + std::to_string(d);
      if (d != want) ++bad;
    }
    return Outcome{bad == 0, "dims " + got + " (want 9 5 6 4 4 4 4 4 3)"};
  });

  criterion(3, "nilradical claims", 0, [&] {
    std::size_t checked = 0, bad = 0;
    std::string first;
    for (const auto& g : grid) {
      if (!is_four_dim_solvable(find_family(g.id))) continue;
      ++checked;
      const VerifyReport r = verify_entry(g.id, g.params);
      bool ok = r.pass();
      bool saw_family = false;
      for (const auto& c : r.checks) saw_family |= c.name == "nilradical_family";
      ok = ok && saw_family;
      if (!ok) {
        if (!bad) {
          first = entry_name(g);
          for (const auto& c : r.checks)
            if (!c.pass) first += " " + c.name + "=" + c.detail;
        }
        ++bad;
      }
    }
    std::ostringstream os;
    os << checked << " solvable 4-dim entries, " << bad << " mismatches";
    if (bad) os << " (first " << first << ")";
    return Outcome{checked > 0 && bad == 0, os.str()};
  });

  criterion(4, "lambda4(alpha) to lambda4'(beta)", 15, [&] {
    std::string detail;
    bool ok = true;
    for (const Scalar& alpha : {q(0), q(-2), q(3, 16)}) {
      // beta = (s - 1)/(s + 1) with s = sqrt(1 - 4 alpha), rational at these points.
      const auto s = sqrt_exact(Scalar(1) - Scalar(4) * alpha);
      const Scalar beta = (*s - Scalar(1)) / (*s + Scalar(1));
      const AlgebraTable a = instantiate("lambda4", {{"alpha", alpha}});
      const AlgebraTable b = instantiate("lambda4p_beta", {{"beta", beta}});
      const auto start = std::chrono::steady_clock::now();
      const SearchResult r = search_isomorphism(a, b);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const bool found = r.verdict == SearchVerdict::Found && verify_isomorphism(a, b, *r.certificate) && secs < 5;
      ok = ok && found;
      detail += (detail.empty() ? "" : ", ") + alpha.str() + "->" + beta.str() + (found ? " found" : " MISSING");
    }
    return Outcome{ok, detail};
  });

  criterion(5, "non-isomorphism census", 600, [&] {
    const CensusReport r = census(grid);
    // Soundness is re-established here independently of the census code.
    std::vector<std::vector<std::pair<std::string, std::string>>> comps;
    std::vector<AlgebraTable> tables;
    for (const auto& g : grid) {
      tables.push_back(instantiate(g.id, g.params));
      comps.push_back(fingerprint(tables.back()).components());
    }
    std::size_t unsound = 0, cross_undecided = 0, within_iso = 0, within_undecided = 0;
    std::set<std::string> findings;
    for (const auto& p : r.pairs) {
      const bool cross = grid[p.a].id != grid[p.b].id;
      switch (p.verdict) {
        case CensusVerdict::Isomorphic:
          if (!p.certificate || !verify_isomorphism(tables[p.a], tables[p.b], *p.certificate)) ++unsound;
          if (cross) findings.insert(grid[p.a].id + "~" + grid[p.b].id);
          else ++within_iso;
          break;
        case CensusVerdict::Distinct: {
          bool differs = false;
          if (p.witness == "dim") differs = tables[p.a].dim() != tables[p.b].dim();
          for (std::size_t k = 0; k < std::min(comps[p.a].size(), comps[p.b].size()); ++k)
            if (comps[p.a][k].first == p.witness && comps[p.a][k] != comps[p.b][k]) differs = true;
          if (p.witness == "nilradical" && comps[p.a].size() != comps[p.b].size()) differs = true;
          if (!differs) ++unsound;
          break;
        }
        case CensusVerdict::Undecided:
          if (cross) ++cross_undecided;
          else ++within_undecided;
          break;
      }
    }
    std::ostringstream os;
    os << r.entries.size() << " entries, " << r.pairs.size() << " pairs, " << r.distinct << " distinct, "
       << within_iso << " within-family isomorphic, " << within_undecided << " within-family undecided, "
       << findings.size() << " cross-family isomorphic findings";
    for (const auto& f : findings) os << " " << f;
    os << ", " << cross_undecided << " cross-family undecided, " << unsound << " unsound";
    return Outcome{unsound == 0 && cross_undecided == 0 && r.pairs.size() == grid.size() * (grid.size() - 1) / 2,
                   os.str()};
  });

  criterion(6, "classifier round-trip", 60, [&] {
    std::size_t runs = 0, bad = 0;
    std::string first;
    for (const auto& f : list_families()) {
      const ParamMap p = roundtrip_params(f.id);
      const AlgebraTable a = instantiate(f.id, p);
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::mt19937_64 rng(1000 * seed + a.dim());
        const AlgebraTable b = change_basis(a, testing::random_invertible(rng, a.dim(), 8));
        const ClassifyResult r = classify(b);
        ++runs;
        const bool certified = r.certificate && change_basis(b, *r.certificate) == instantiate(r.family, r.params);
        if (classified_id(r) != f.id || !certified) {
          if (!bad) first = f.id + " seed " + std::to_string(seed) + " -> " + classified_id(r);
          ++bad;
        }
      }
    }
    std::ostringstream os;
    os << runs << " runs, " << bad << " misses";
    if (bad) os << " (first " << first << ")";
    return Outcome{bad == 0, os.str()};
  });

  criterion(7, "codimension bound", 0, [&] {
    std::size_t checked = 0, bad = 0;
    std::string first;
    std::map<std::string, MaxNilIndependent> cache;
    for (const auto& g : grid) {
      if (!is_four_dim_solvable(find_family(g.id))) continue;
      const AlgebraTable a = instantiate(g.id, g.params);
      const Subspace nil = nilradical(a);
      const AlgebraTable n = restrict_to(a, nil);
      std::ostringstream key;
      for (const auto& e : n.entries()) key << e.i << e.j << e.k << e.c << ";";
      auto it = cache.find(key.str());
      if (it == cache.end()) it = cache.emplace(key.str(), max_nil_independent(n)).first;
      ++checked;
      // The exhibited nil-independent family must already reach the codimension.
      if (a.dim() - nil.dim() > it->second.lower_bound) {
        if (!bad) first = entry_name(g);
        ++bad;
      }
    }
    const auto mu1 = max_nil_independent(instantiate("mu1", {}));
    const auto ab2 = max_nil_independent(instantiate("abelian_n", {{"n", q(2)}}));
    const bool small = mu1.lower_bound == 1 && mu1.exact && ab2.lower_bound == 2 && ab2.exact;
    std::ostringstream os;
    os << checked << " entries, " << bad << " violations";
    if (bad) os << " (first " << first << ")";
    os << "; mu1 " << mu1.lower_bound << (mu1.exact ? " exact" : " inexact") << ", abelian_2 " << ab2.lower_bound
       << (ab2.exact ? " exact" : " inexact");
    return Outcome{bad == 0 && small, os.str()};
  });

  criterion(8, "non-solvable detection", 0, [&] {
    const ClassifyResult s = classify(instantiate("sl2c", {}));
    const ClassifyResult z = classify(AlgebraTable(4, {}));
    const bool ok = s.verdict == ClassifyVerdict::NonSolvable && s.family == "sl2c" && s.certificate &&
                    z.verdict == ClassifyVerdict::OutOfScopeNilpotent;
    return Outcome{ok, "sl2c -> " + classified_id(s) + ", zero table -> " +
                           (z.verdict == ClassifyVerdict::OutOfScopeNilpotent ? "OutOfScopeNilpotent" : "other")};
  });

  criterion(9, "basis-change invariance", 0, [&] {
    std::size_t fixtures = 0, trials = 0, bad = 0;
    std::string first;
    for (const auto& f : list_families()) {
      const AlgebraTable a = instantiate(f.id, roundtrip_params(f.id));
      const Fingerprint fa = fingerprint(a);
      const auto lcs = lower_central_series(a).dims;
      const auto ds = derived_series(a).dims;
      std::mt19937_64 rng(0x5eed0000u + fixtures);
      ++fixtures;
      for (int t = 0; t < 200; ++t) {
        const AlgebraTable b = change_basis(a, testing::random_invertible(rng, a.dim(), 8));
        ++trials;
        const bool ok = !first_difference(fa, fingerprint(b)) && lower_central_series(b).dims == lcs &&
                        derived_series(b).dims == ds;
        if (!ok) {
          if (!bad) first = f.id + " trial " + std::to_string(t);
          ++bad;
        }
      }
    }
    std::ostringstream os;
    os << fixtures << " fixtures, " << trials << " basis changes, " << bad << " violations";
    if (bad) os << " (first " << first << ")";
    return Outcome{bad == 0, os.str()};
  });

  std::cout << (failures ? "acceptance: FAIL (" + std::to_string(failures) + " criteria)" : "acceptance: PASS")
            << std::endl;
  return failures ? 1 : 0;
}
