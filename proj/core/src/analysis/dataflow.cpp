#include "layopt/analysis/dataflow.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace layopt {

namespace {

std::vector<std::string> used_vars(const CfgNode& n) {
  std::vector<std::string> out;
  switch (n.kind) {
    case CfgNode::Kind::LetRhs:
      for (const auto& a : n.expr->rhs.args)
        if (a.kind == Arg::Kind::Var) out.push_back(a.var);
      break;
    case CfgNode::Kind::CaseScrut:
      out.push_back(n.expr->scrut);
      break;
    case CfgNode::Kind::Terminal:
      out.push_back(n.expr->ref);
      break;
  }
  return out;
}

}  // namespace

DataFlowInfo build_dataflow(const FunDef& f, const Cfg& g) {
  if (g.fn != &f) throw std::invalid_argument("cfg was built for another function");
  DataFlowInfo d;
  d.cfg = &g;
  std::size_t n = g.nodes.size();
  d.direct_deps.assign(n, {});
  d.control_parent.assign(n, -1);

  // Defs and control parents from a preorder walk mirroring build_cfg.
  struct Walk {
    const Cfg& g;
    DataFlowInfo& d;
    void visit(int id, int parent_case) {
      d.control_parent[static_cast<std::size_t>(id)] = parent_case;
      const CfgNode& node = g.node(id);
      switch (node.kind) {
        case CfgNode::Kind::LetRhs:
          if (!d.def_node.emplace(node.expr->var, id).second)
            throw std::logic_error("duplicate binder '" + node.expr->var +
                                   "'; normalize_anf must run first");
          visit(node.succs[0], parent_case);
          break;
        case CfgNode::Kind::CaseScrut: {
          for (std::size_t k = 0; k < node.expr->arms.size(); ++k) {
            for (const auto& b : node.expr->arms[k].binders)
              if (!d.def_node.emplace(b, id).second)
                throw std::logic_error("duplicate binder '" + b +
                                       "'; normalize_anf must run first");
            visit(node.succs[k], id);
          }
          break;
        }
        case CfgNode::Kind::Terminal:
          break;
      }
    }
  };
  Walk{g, d}.visit(g.entry, -1);

  for (const auto& node : g.nodes) {
    std::set<int> deps;
    for (const auto& v : used_vars(node)) {
      d.uses[v].push_back(node.id);
      auto it = d.def_node.find(v);
      if (it != d.def_node.end() && it->second != node.id)
        deps.insert(it->second);
    }
    int cp = d.control_parent[static_cast<std::size_t>(node.id)];
    if (cp >= 0) deps.insert(cp);
    d.direct_deps[static_cast<std::size_t>(node.id)] =
        std::vector<int>(deps.begin(), deps.end());
  }

  // Transitive closure; the dep graph is acyclic (defs precede uses).
  d.reach.assign(n, std::vector<bool>(n, false));
  std::vector<int> order = topo_order(g);
  // Process in topological order so dependencies are already closed.
  for (int id : order) {
    auto& row = d.reach[static_cast<std::size_t>(id)];
    for (int dep : d.direct_deps[static_cast<std::size_t>(id)]) {
      row[static_cast<std::size_t>(dep)] = true;
      const auto& sub = d.reach[static_cast<std::size_t>(dep)];
      for (std::size_t k = 0; k < n; ++k)
        if (sub[k]) row[k] = true;
    }
  }
  return d;
}

bool may_reorder(const DataFlowInfo& d, int a, int b) {
  const Cfg& g = *d.cfg;
  auto valid = [&](int id) {
    return id >= 0 && id < static_cast<int>(g.nodes.size());
  };
  if (!valid(a) || !valid(b))
    throw std::invalid_argument("node id outside this function's graph");
  const CfgNode& na = g.node(a);
  const CfgNode& nb = g.node(b);
  if (na.kind != CfgNode::Kind::LetRhs || nb.kind != CfgNode::Kind::LetRhs)
    return false;
  if (d.control_parent[static_cast<std::size_t>(a)] !=
      d.control_parent[static_cast<std::size_t>(b)])
    return false;
  if (a == b) return false;
  return !d.depends(a, b) && !d.depends(b, a);
}

std::string emit_dep_dot(const DataFlowInfo& d) {
  const Cfg& g = *d.cfg;
  std::ostringstream os;
  os << "digraph dep {\n";
  for (const auto& n : g.nodes) os << "  n" << n.id << ";\n";
  for (const auto& n : g.nodes)
    for (int dep : d.direct_deps[static_cast<std::size_t>(n.id)])
      os << "  n" << n.id << " -> n" << dep << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace layopt
