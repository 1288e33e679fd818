#include "layopt/analysis/cfg.hpp"

#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include "layopt/lang/printer.hpp"

namespace layopt {

namespace {

struct Builder {
  Cfg& g;

  int fresh(CfgNode::Kind kind, const Expr* e, Rational w) {
    int id = static_cast<int>(g.nodes.size());
    CfgNode n;
    n.id = id;
    n.kind = kind;
    n.expr = e;
    n.weight = w;
    g.nodes.push_back(std::move(n));
    return id;
  }

  int walk(const Expr& e, Rational weight) {
    switch (e.kind) {
      case Expr::Kind::Let: {
        int id = fresh(CfgNode::Kind::LetRhs, &e, weight);
        int succ = walk(*e.body, weight);
        g.nodes[static_cast<std::size_t>(id)].succs = {succ};
        return id;
      }
      case Expr::Kind::Case: {
        int id = fresh(CfgNode::Kind::CaseScrut, &e, weight);
        Rational arm_w =
            weight / Rational(static_cast<std::int64_t>(e.arms.size()));
        std::vector<int> succs;
        succs.reserve(e.arms.size());
        for (const auto& arm : e.arms) succs.push_back(walk(*arm.body, arm_w));
        g.nodes[static_cast<std::size_t>(id)].succs = std::move(succs);
        return id;
      }
      case Expr::Kind::Var:
        return fresh(CfgNode::Kind::Terminal, &e, weight);
    }
    throw std::logic_error("unreachable expr kind");
  }
};

std::string fmt3(const Rational& w) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << w.to_double();
  return os.str();
}

std::string escape_label(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string payload_summary(const CfgNode& n) {
  switch (n.kind) {
    case CfgNode::Kind::LetRhs:
      return "let " + n.expr->var + " = " + print_rhs(n.expr->rhs);
    case CfgNode::Kind::CaseScrut:
      return "case " + n.expr->scrut;
    case CfgNode::Kind::Terminal:
      return "ret " + n.expr->ref;
  }
  return "?";
}

}  // namespace

Cfg build_cfg(const FunDef& f, Rational weight) {
  Cfg g;
  g.fn = &f;
  Builder b{g};
  g.entry = b.walk(*f.body, weight);
  return g;
}

std::vector<int> topo_order(const Cfg& g) {
  std::size_t n = g.nodes.size();
  std::vector<int> indeg(n, 0);
  for (const auto& node : g.nodes)
    for (int s : node.succs) indeg[static_cast<std::size_t>(s)]++;
  std::set<int> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.insert(static_cast<int>(i));
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    int id = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(id);
    for (int s : g.node(id).succs)
      if (--indeg[static_cast<std::size_t>(s)] == 0) ready.insert(s);
  }
  if (order.size() != n)
    throw std::logic_error("cycle detected in control-flow graph");
  return order;
}

std::string emit_cfg_dot(const Cfg& g) {
  std::ostringstream os;
  os << "digraph cfg {\n";
  if (g.fn) os << "  label=\"" << escape_label(g.fn->name) << "\";\n";
  for (const auto& n : g.nodes) {
    os << "  n" << n.id << " [label=\"" << escape_label(payload_summary(n))
       << "\\nw=" << fmt3(n.weight) << "\"];\n";
  }
  for (const auto& n : g.nodes)
    for (int s : n.succs)
      os << "  n" << n.id << " -> n" << s << " [label=\""
         << fmt3(g.node(s).weight) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace layopt
