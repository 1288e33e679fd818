#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "layopt/lang/ast.hpp"
#include "layopt/runtime/value.hpp"
#include "layopt/solver/cost_model.hpp"

namespace layopt {

struct RewritePlan {
  std::map<std::string, LayoutAssignment> layouts;  // by constructor

  struct Motion {
    std::string fn;
    std::string arm;  // "<ctor>#<k>" for the k-th arm on that ctor in fn
    std::vector<std::string> old_order;
    std::vector<std::string> new_order;
  };
  std::vector<Motion> moved;
};

// Permutes the constructor's declaration, every construction site and every
// pattern for it.  The result still typechecks.
Program reorder_datatype(const Program& p, const LayoutAssignment& a);

// All constructors at once.
Program reorder_program(const Program& p,
                        const std::map<std::string, LayoutAssignment>& layouts);

// Within each straight-line let chain of an arm that matches a rewritten
// constructor, bubbles field-touching bindings toward field-position order.
// Each adjacent swap is licensed by may_reorder; illegal motion is skipped.
// Call after reorder_program, with the same layouts.
Program apply_code_motion(const Program& p,
                          const std::map<std::string, LayoutAssignment>& layouts,
                          RewritePlan* plan = nullptr);

// Boxed value conversion between source and rewritten field orders.
ValuePtr permute_value(const ValuePtr& v,
                       const std::map<std::string, LayoutAssignment>& layouts);
ValuePtr unpermute_value(const ValuePtr& v,
                         const std::map<std::string, LayoutAssignment>& layouts);

struct VerifyReport {
  bool ok = true;
  int trials_run = 0;
  // first divergence, when any
  std::string fn;
  std::string input;
  std::string before_result;
  std::string after_result;

  std::string summary() const;
};

// Runs both programs on randomized inputs per function and compares results
// (inputs and outputs converted through the plan's layouts).
VerifyReport verify_rewrite(const Program& before, const Program& after,
                            const RewritePlan& plan, int trials,
                            std::uint64_t seed = 0x5eedULL);

std::string plan_json(const RewritePlan& plan);

}  // namespace layopt
