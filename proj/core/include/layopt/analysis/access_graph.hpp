#pragma once

#include <string>
#include <vector>

#include "layopt/analysis/cfg.hpp"
#include "layopt/analysis/dataflow.hpp"
#include "layopt/rational.hpp"

namespace layopt {

enum class EdgeKind { ControlFlow, DataFlow };

// Directed temporal-order edge between two fields of one constructor.
// DataFlow marks an order the code cannot legally reverse (the later access
// sits under a case whose scrutinee derives from the earlier field);
// ControlFlow orders are reversible by let reordering.
struct AccessEdge {
  int src = 0;
  int dst = 0;
  Rational weight;
  EdgeKind kind = EdgeKind::ControlFlow;
};

struct FieldAccessGraph {
  std::string fn;
  std::string dcon;
  int field_count = 0;
  std::vector<std::string> field_names;  // "<idx>:<TypeName>" labels
  std::vector<AccessEdge> edges;         // sorted by (src, dst)

  const AccessEdge* find_edge(int src, int dst) const {
    for (const auto& e : edges)
      if (e.src == src && e.dst == dst) return &e;
    return nullptr;
  }
};

// Walks every root-to-leaf CFG path carrying the last accessed field.
// Along one path only each field's first access takes part in edges;
// re-accesses are invisible (their start addresses are assumed warm).
// Same-direction duplicates from different paths merge by weight addition.
FieldAccessGraph build_field_access_graph(const Program& p, const FunDef& f,
                                          const Cfg& g, const DataFlowInfo& d,
                                          const std::string& dcon);

// Edge-wise union with each part's weights scaled by its function weight.
FieldAccessGraph merge_graphs(
    const std::vector<std::pair<FieldAccessGraph, Rational>>& parts);

std::string emit_fag_dot(const FieldAccessGraph& g);
std::string fag_json(const FieldAccessGraph& g);

}  // namespace layopt
