#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "leibniz/poly.hpp"

namespace leibniz {

inline constexpr std::size_t kDefaultBudget = 100000;
inline constexpr long kDefaultHeightBound = 64;

/// Budget from LEIBNIZ_LAB_BUDGET when set to a positive integer, else the default.
std::size_t default_budget();

/// Polynomial system over Q(i): all `equations` vanish, no `nonzero` entry vanishes.
struct PolySystem {
  std::size_t nvars = 0;
  std::vector<Poly> equations;
  std::vector<Poly> nonzero;
};

struct SolverOptions {
  std::size_t budget = kDefaultBudget;  ///< node budget of the elimination tree
  long height_bound = kDefaultHeightBound;
  std::uint64_t seed = 1;
  std::size_t max_solutions = 1;
};

enum class SolveStatus { Found, Exhausted, BudgetExceeded };

struct SolveResult {
  SolveStatus status = SolveStatus::Exhausted;
  std::vector<std::vector<Scalar>> solutions;
  /// True when no branch was pruned heuristically: an Exhausted result with
  /// this flag set proves that the system has no solution over C.
  bool exhaustive = true;
  std::size_t nodes = 0;
};

/// Filter applied to every verified solution before it is reported.
using SolutionFilter = std::function<bool(const std::vector<Scalar>&)>;

/// Depth-first elimination: linear substitution, exact univariate roots,
/// monomial-factor splitting, case splits on linear coefficients, and as a
/// last resort bounded-height value branching. Every reported solution is
/// checked exactly against the input system.
SolveResult solve(const PolySystem& system, const SolverOptions& options = {},
                  const SolutionFilter& accept = {});

}  // namespace leibniz
