#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "layopt/solver/cost_model.hpp"

namespace layopt {

// User layout constraint on one constructor (from ANN pragmas).
struct LayoutConstraint {
  enum class Kind { After, RightAfter, Absolute } kind = Kind::After;
  int field = 0;
  int other = 0;  // reference field (After/RightAfter) or position (Absolute)

  std::string describe(const std::string& dcon) const;
};

struct ConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<LayoutConstraint> constraints_for(const Program& p,
                                              const std::string& dcon);

// Cost-minimal bijection under the given constraints.  Exhaustive for
// n <= 8, branch-and-bound with an admissible per-edge bound above that.
// Ties resolve to the lexicographically smallest position array, optionally
// after preferring layouts cheaper under `tie_seed` (the earliest-defined
// function's own graph, used by global solving).
LayoutAssignment solve_exact(const FieldAccessGraph& g,
                             const FieldAttrTable& attrs,
                             const CostParams& params,
                             const std::vector<LayoutConstraint>& constraints,
                             const FieldAccessGraph* tie_seed = nullptr);

// Greedy walk from the root field following maximal edge weights.
LayoutAssignment solve_greedy(const FieldAccessGraph& g);

enum class SolveMode { Solver, Greedy };

// Uniformly weighted merge of one constructor's per-function graphs
// followed by a solve.  `parts` must be in function definition order; the
// first entry seeds tie-breaking.
LayoutAssignment solve_merged(
    const std::vector<std::pair<FieldAccessGraph, Rational>>& parts,
    const FieldAttrTable& attrs, const CostParams& params,
    const std::vector<LayoutConstraint>& constraints, SolveMode mode);

}  // namespace layopt
