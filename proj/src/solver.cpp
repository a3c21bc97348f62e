#include "leibniz/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <random>

#include "leibniz/errors.hpp"

namespace leibniz {

std::size_t default_budget() {
  if (const char* env = std::getenv("LEIBNIZ_LAB_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultBudget;
}

namespace {

// var = num / den, with num and den in the variables still free when the
// substitution was made.
struct Substitution {
  std::size_t var;
  Poly num;
  Poly den;
};

constexpr std::size_t kMaxTerms = 4000;
constexpr std::size_t kFallbackWidth = 40;

struct Node {
  std::vector<Poly> eqs;
  std::vector<Poly> nonzero;
  std::vector<Substitution> subst;
  std::vector<bool> eliminated;
};

// Per-variable shape of one equation, gathered in a single term scan.
struct VarShape {
  unsigned max_deg = 0;
  unsigned min_deg = 255;
  bool linear_coeff_constant = true;  // every term with exponent 1 has no other variable
};

std::array<VarShape, kMaxVars> shape_of(const Poly& p) {
  std::array<VarShape, kMaxVars> s{};
  for (const auto& t : p.terms()) {
    for (std::size_t v = 0; v < kMaxVars; ++v) {
      const unsigned e = t.m.exp[v];
      s[v].max_deg = std::max(s[v].max_deg, e);
      s[v].min_deg = std::min(s[v].min_deg, e);
      if (e == 1) {
        for (std::size_t w = 0; w < kMaxVars; ++w) {
          if (w != v && t.m.exp[w]) {
            s[v].linear_coeff_constant = false;
            break;
          }
        }
      }
    }
  }
  return s;
}

// Substitutes var = num/den into p, clearing the denominator.
Poly substitute_rational(const Poly& p, std::size_t var, const Poly& num, const Poly& den) {
  if (!p.contains(var)) return p;
  if (den.is_constant()) return p.substitute(var, num * den.constant().inverse());
  const auto coeffs = p.coefficients_in(var);
  const std::size_t d = coeffs.size() - 1;
  Poly out;
  for (std::size_t k = 0; k <= d; ++k) {
    if (coeffs[k].is_zero()) continue;
    out += coeffs[k] * num.pow(static_cast<unsigned>(k)) * den.pow(static_cast<unsigned>(d - k));
  }
  return out;
}

bool same_up_to_scalar(const Poly& a, const Poly& b) { return a.monic() == b.monic(); }

std::vector<Scalar> fallback_candidates(long height_bound) {
  std::vector<Scalar> out{Scalar(0)};
  for (long h = 1; h <= height_bound; ++h) {
    for (long q = 1; q <= h; ++q) {
      // Fractions p/q of height exactly h.
      std::vector<long> nums;
      if (q == h) {
        for (long p = 1; p <= h; ++p)
          if (std::gcd(p, q) == 1) nums.push_back(p);
      } else if (std::gcd(h, q) == 1) {
        nums.push_back(h);
      }
      for (long p : nums) {
        out.emplace_back(mpq_class(p, q));
        out.emplace_back(mpq_class(-p, q));
      }
    }
    if (h <= 2) {
      for (long a = -h; a <= h; ++a) {
        for (long b : {-h, h}) {
          out.emplace_back(mpq_class(a), mpq_class(b));
          if (std::abs(a) != h) out.emplace_back(mpq_class(b), mpq_class(a));
        }
      }
    }
  }
  for (auto& s : out) s = Scalar(s.re(), s.im());
  std::vector<Scalar> unique;
  for (auto& s : out)
    if (std::find(unique.begin(), unique.end(), s) == unique.end()) unique.push_back(s);
  return unique;
}

class Search {
 public:
  Search(const PolySystem& sys, const SolverOptions& opt, const SolutionFilter& accept)
      : sys_(sys), opt_(opt), accept_(accept), rng_(opt.seed) {}

  SolveResult run() {
    Node root;
    root.eqs = sys_.equations;
    root.nonzero = sys_.nonzero;
    root.eliminated.assign(sys_.nvars, false);
    visit(std::move(root));
    if (budget_hit_) {
      result_.status = result_.solutions.empty() ? SolveStatus::BudgetExceeded : SolveStatus::Found;
      result_.exhaustive = false;
    } else {
      result_.status = result_.solutions.empty() ? SolveStatus::Exhausted : SolveStatus::Found;
    }
    return result_;
  }

 private:
  bool done() const { return budget_hit_ || result_.solutions.size() >= opt_.max_solutions; }

  void apply(Node& n, std::size_t var, const Poly& num, const Poly& den) {
    for (auto& e : n.eqs) e = substitute_rational(e, var, num, den);
    for (auto& z : n.nonzero) z = substitute_rational(z, var, num, den);
    if (!den.is_constant()) n.nonzero.push_back(den);
    n.subst.push_back({var, num, den});
    n.eliminated[var] = true;
  }

  static bool listed(const Node& n, const Poly& p) {
    for (const auto& z : n.nonzero)
      if (same_up_to_scalar(z, p)) return true;
    return false;
  }

  bool known_nonzero(const Node& n, const Poly& p) const {
    if (p.is_constant()) return !p.is_zero();
    if (listed(n, p)) return true;
    // A monomial in variables that are each known to be nonzero.
    if (p.size() == 1) {
      for (std::size_t v : p.variables())
        if (!listed(n, Poly::var(v))) return false;
      return true;
    }
    return false;
  }

  // Normalizes the node; false when it is inconsistent.
  bool simplify(Node& n) {
    std::vector<Poly> eqs;
    for (auto& e : n.eqs) {
      if (e.is_zero()) continue;
      if (e.is_constant()) return false;
      Poly m = e.monic();
      // Strip powers of variables known to be nonzero.
      for (std::size_t v : m.variables()) {
        const unsigned k = m.min_degree_in(v);
        if (k > 0 && known_nonzero(n, Poly::var(v))) m = m.divide_by_var(v, k);
      }
      if (m.is_constant()) return false;
      if (std::none_of(eqs.begin(), eqs.end(), [&](const Poly& q) { return q == m; }))
        eqs.push_back(std::move(m));
    }
    n.eqs = std::move(eqs);
    std::vector<Poly> nz;
    for (auto& z : n.nonzero) {
      if (z.is_zero()) return false;
      if (z.is_constant()) continue;
      Poly m = z.monic();
      if (std::none_of(nz.begin(), nz.end(), [&](const Poly& q) { return q == m; }))
        nz.push_back(std::move(m));
    }
    n.nonzero = std::move(nz);
    return true;
  }

  void visit(Node n) {
    if (done()) return;
    if (++result_.nodes > opt_.budget || depth_ >= kMaxDepth) {
      budget_hit_ = true;
      return;
    }
    ++depth_;
    visit_node(std::move(n));
    --depth_;
  }

  void visit_node(Node n) {
    if (!simplify(n)) return;
    // Expression swell: give the branch up and report the search as incomplete.
    std::size_t terms = 0;
    for (const auto& e : n.eqs) terms += e.size();
    for (const auto& e : n.nonzero) terms += e.size();
    if (terms > kMaxTerms) {
      result_.exhaustive = false;
      return;
    }
    if (n.eqs.empty()) {
      finish(n);
      return;
    }

    std::vector<std::array<VarShape, kMaxVars>> shapes;
    shapes.reserve(n.eqs.size());
    for (const auto& e : n.eqs) shapes.push_back(shape_of(e));

    // Linear elimination with a constant pivot.
    {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      std::pair<unsigned, std::size_t> best_score{};
      for (std::size_t q = 0; q < n.eqs.size(); ++q) {
        for (std::size_t v = 0; v < kMaxVars; ++v) {
          const auto& s = shapes[q][v];
          if (s.max_deg != 1 || !s.linear_coeff_constant) continue;
          const std::pair<unsigned, std::size_t> score{n.eqs[q].degree(), n.eqs[q].size()};
          if (!best || score < best_score) {
            best = {{q, v}};
            best_score = score;
          }
        }
      }
      if (best) {
        const auto [q, v] = *best;
        const auto coeffs = n.eqs[q].coefficients_in(v);
        Poly num = -coeffs[0];
        apply(n, v, num, coeffs[1]);
        visit(std::move(n));
        return;
      }
    }

    // Univariate equation: branch on its exact roots.
    for (std::size_t q = 0; q < n.eqs.size(); ++q) {
      const auto vars = n.eqs[q].variables();
      if (vars.size() != 1) continue;
      const std::size_t v = vars[0];
      const auto r = upoly::roots(upoly::from_poly(n.eqs[q], v));
      if (!r.all_found) result_.exhaustive = false;
      for (const auto& root : r.roots) {
        Node child = n;
        apply(child, v, Poly(root), Poly(1));
        visit(std::move(child));
        if (done()) return;
      }
      return;
    }

    // An equation divisible by a variable: v = 0 or divide it out.
    for (std::size_t q = 0; q < n.eqs.size(); ++q) {
      for (std::size_t v = 0; v < kMaxVars; ++v) {
        const unsigned k = shapes[q][v].min_deg;
        if (shapes[q][v].max_deg == 0 || k == 0 || k == 255) continue;
        // The generic branch first: isomorphisms rarely sit on the degenerate one.
        {
          Node child = n;
          child.eqs[q] = child.eqs[q].divide_by_var(v, k);
          child.nonzero.push_back(Poly::var(v));
          visit(std::move(child));
          if (done()) return;
        }
        apply(n, v, Poly(0), Poly(1));
        visit(std::move(n));
        return;
      }
    }

    // A variable of degree one with a polynomial coefficient g: g = 0 or g != 0.
    {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      std::pair<std::size_t, std::size_t> best_score{};
      for (std::size_t q = 0; q < n.eqs.size(); ++q) {
        for (std::size_t v = 0; v < kMaxVars; ++v) {
          if (shapes[q][v].max_deg != 1) continue;
          const auto coeffs = n.eqs[q].coefficients_in(v);
          // Pivots that need no case split come first.
          const std::size_t split = known_nonzero(n, coeffs[1]) ? 0 : coeffs[1].size();
          const std::pair<std::size_t, std::size_t> score{split, n.eqs[q].size()};
          if (!best || score < best_score) {
            best = {{q, v}};
            best_score = score;
          }
        }
      }
      if (best) {
        const auto [q, v] = *best;
        const auto coeffs = n.eqs[q].coefficients_in(v);
        const Poly& g = coeffs[1];
        const bool split = !known_nonzero(n, g);
        {
          Node child = n;
          apply(child, v, -coeffs[0], g);
          visit(std::move(child));
          if (done() || !split) return;
        }
        // g = 0 reduces the equation g v + h to h.
        n.eqs[q] = coeffs[0];
        n.eqs.push_back(g);
        visit(std::move(n));
        return;
      }
    }

    // Last resort: bounded-height value branching on the most frequent variable.
    result_.exhaustive = false;
    std::array<std::size_t, kMaxVars> freq{};
    for (const auto& s : shapes)
      for (std::size_t v = 0; v < kMaxVars; ++v)
        if (s[v].max_deg) ++freq[v];
    const std::size_t v = static_cast<std::size_t>(std::max_element(freq.begin(), freq.end()) - freq.begin());
    if (candidates_.empty()) candidates_ = fallback_candidates(opt_.height_bound);
    // Positive-dimensional components meet small values early; a long run of
    // failures means the branch is most likely empty.
    result_.exhaustive = false;
    std::size_t tried = 0;
    for (const auto& value : candidates_) {
      if (++tried > kFallbackWidth) return;
      Node child = n;
      apply(child, v, Poly(value), Poly(1));
      visit(std::move(child));
      if (done()) return;
    }
  }

  std::optional<std::vector<Scalar>> back_substitute(const Node& n, std::vector<Scalar> values) const {
    for (auto it = n.subst.rbegin(); it != n.subst.rend(); ++it) {
      const Scalar den = it->den.evaluate(values);
      if (den.is_zero()) return std::nullopt;
      values[it->var] = it->num.evaluate(values) / den;
    }
    return values;
  }

  bool verify(const std::vector<Scalar>& values) const {
    for (const auto& e : sys_.equations)
      if (!e.evaluate(values).is_zero()) return false;
    for (const auto& z : sys_.nonzero)
      if (z.evaluate(values).is_zero()) return false;
    return true;
  }

  void finish(const Node& n) {
    std::vector<std::size_t> free_vars;
    for (std::size_t v = 0; v < sys_.nvars; ++v)
      if (!n.eliminated[v]) free_vars.push_back(v);
    std::uniform_int_distribution<long> dist(-9, 9);
    constexpr int kAttempts = 40;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      std::vector<Scalar> values(std::max<std::size_t>(sys_.nvars, kMaxVars));
      if (attempt > 0) {
        // Small values first, widening with the attempt count.
        for (auto v : free_vars) values[v] = Scalar(attempt < 4 ? dist(rng_) % 3 : dist(rng_));
      }
      bool ok = true;
      for (const auto& z : n.nonzero)
        if (z.evaluate(values).is_zero()) ok = false;
      if (!ok) continue;
      auto full = back_substitute(n, values);
      if (!full) continue;
      full->resize(sys_.nvars);
      if (!verify(*full)) throw Error("solver produced an unverifiable solution");
      if (accept_ && !accept_(*full)) {
        if (free_vars.empty()) return;
        continue;
      }
      if (std::find(result_.solutions.begin(), result_.solutions.end(), *full) == result_.solutions.end())
        result_.solutions.push_back(std::move(*full));
      return;
    }
    // Free values never satisfied the side conditions (or the filter).
    result_.exhaustive = false;
  }

  const PolySystem& sys_;
  SolverOptions opt_;
  const SolutionFilter& accept_;
  std::mt19937_64 rng_;
  std::vector<Scalar> candidates_;
  SolveResult result_;
  bool budget_hit_ = false;
  // Guards the native stack; hitting it counts as running out of budget.
  static constexpr std::size_t kMaxDepth = 2000;
  std::size_t depth_ = 0;
};

}  // namespace

SolveResult solve(const PolySystem& system, const SolverOptions& options, const SolutionFilter& accept) {
  if (system.nvars > kMaxVars) throw DimensionMismatch("too many unknowns for the solver");
  // A short deterministic run first; then restarts under random variable
  // orders with growing budgets, since a bad early branch can trap the search.
  constexpr std::size_t kFirstSlice = 100;
  std::mt19937_64 rng(options.seed);
  SolveResult total;
  total.status = SolveStatus::BudgetExceeded;
  total.exhaustive = false;
  std::size_t slice = std::min(options.budget, kFirstSlice);
  for (std::size_t attempt = 0; total.nodes < options.budget; ++attempt) {
    slice = std::min(slice, options.budget - total.nodes);
    SolverOptions opt = options;
    opt.budget = slice;
    opt.seed = options.seed + attempt;
    std::vector<std::size_t> to(system.nvars), back(system.nvars);
    std::iota(to.begin(), to.end(), std::size_t{0});
    if (attempt > 0) std::shuffle(to.begin(), to.end(), rng);
    for (std::size_t v = 0; v < to.size(); ++v) back[to[v]] = v;
    PolySystem renamed{system.nvars, {}, {}};
    for (const auto& e : system.equations) renamed.equations.push_back(e.rename(to));
    for (const auto& e : system.nonzero) renamed.nonzero.push_back(e.rename(to));
    auto original = [&](const std::vector<Scalar>& values) {
      std::vector<Scalar> out(values.size());
      for (std::size_t v = 0; v < values.size(); ++v) out[v] = v < back.size() ? values[to[v]] : values[v];
      return out;
    };
    SolutionFilter filter;
    if (accept) filter = [&](const std::vector<Scalar>& values) { return accept(original(values)); };
    Search search(renamed, opt, filter);
    SolveResult r = search.run();
    total.nodes += r.nodes;
    if (r.status != SolveStatus::BudgetExceeded && (r.exhaustive || !r.solutions.empty())) {
      r.nodes = total.nodes;
      for (auto& sol : r.solutions) sol = original(sol);
      return r;
    }
    slice *= 2;
  }
  return total;
}

}  // namespace leibniz
