#pragma once

#include <map>
#include <string>
#include <vector>

#include "layopt/analysis/cfg.hpp"

namespace layopt {

// Use-def/def-use chains over a function body plus the dependence relation
// that licenses (or forbids) let reordering.  Control dependence on the
// innermost case is tracked explicitly so motion never crosses an arm
// boundary.
struct DataFlowInfo {
  const Cfg* cfg = nullptr;

  // let binders map to their LetRhs node; pattern binders map to the
  // CaseScrut node that bound them.  Parameters have no defining node.
  std::map<std::string, int> def_node;
  std::map<std::string, std::vector<int>> uses;

  // direct dependence edges (value uses + control parent), per node
  std::vector<std::vector<int>> direct_deps;
  // innermost enclosing case node, -1 at top level
  std::vector<int> control_parent;
  // transitive closure of direct_deps
  std::vector<std::vector<bool>> reach;

  bool depends(int node, int on) const {
    return reach[static_cast<std::size_t>(node)][static_cast<std::size_t>(on)];
  }
};

DataFlowInfo build_dataflow(const FunDef& f, const Cfg& g);

// True when two LetRhs nodes sit under the same innermost case and neither
// depends on the other.  Throws on ids outside the function's graph.
bool may_reorder(const DataFlowInfo& d, int a, int b);

std::string emit_dep_dot(const DataFlowInfo& d);

}  // namespace layopt
