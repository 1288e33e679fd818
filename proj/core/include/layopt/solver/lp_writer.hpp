#pragma once

#include <string>
#include <vector>

#include "layopt/solver/solver.hpp"

namespace layopt {

// Human-readable integer-program listing for one constructor's layout
// problem: position variables, pairwise all-different constraints, four
// indicator cost terms per access edge and the weighted objective.
// Purely an audit artifact; nothing parses it back.
std::string emit_lp(const FieldAccessGraph& g, const FieldAttrTable& attrs,
                    const CostParams& params,
                    const std::vector<LayoutConstraint>& constraints);

}  // namespace layopt
