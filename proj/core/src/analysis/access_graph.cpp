#include "layopt/analysis/access_graph.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace layopt {

namespace {

// Binders bound by pattern matches on the constructor under analysis.
std::map<std::string, int> dcon_binders(const FunDef& f,
                                        const std::string& dcon) {
  std::map<std::string, int> out;
  struct Walk {
    const std::string& dcon;
    std::map<std::string, int>& out;
    void visit(const Expr& e) {
      switch (e.kind) {
        case Expr::Kind::Let:
          visit(*e.body);
          break;
        case Expr::Kind::Case:
          for (const auto& arm : e.arms) {
            if (arm.ctor == dcon)
              for (std::size_t k = 0; k < arm.binders.size(); ++k)
                out[arm.binders[k]] = static_cast<int>(k);
            visit(*arm.body);
          }
          break;
        case Expr::Kind::Var:
          break;
      }
    }
  };
  Walk{dcon, out}.visit(*f.body);
  return out;
}

// Backward slice of a variable: every variable its value derives from,
// through let right-hand sides and pattern-match scrutinees.
struct Slicer {
  const Cfg& g;
  const DataFlowInfo& d;
  std::map<std::string, std::set<std::string>> memo;

  const std::set<std::string>& slice(const std::string& v) {
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    auto& out = memo[v];  // inserted first: cycles impossible, defs precede uses
    out.insert(v);
    auto def = d.def_node.find(v);
    if (def == d.def_node.end()) return out;  // parameter
    const CfgNode& n = g.node(def->second);
    if (n.kind == CfgNode::Kind::LetRhs) {
      for (const auto& a : n.expr->rhs.args)
        if (a.kind == Arg::Kind::Var) {
          const auto& sub = slice(a.var);
          out.insert(sub.begin(), sub.end());
        }
    } else if (n.kind == CfgNode::Kind::CaseScrut) {
      const auto& sub = slice(n.expr->scrut);
      out.insert(sub.begin(), sub.end());
    }
    return out;
  }
};

std::vector<std::string> ordered_vars(const CfgNode& n) {
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

struct GuardInfo {
  int step;                       // path position of the case node
  const std::set<std::string>* slice;  // scrutinee's backward slice
};

struct PathState {
  std::set<int> accessed_fields;
  int last_field = -1;
  std::string last_binder;
  int last_step = -1;
  std::vector<GuardInfo> guards;
  int step = 0;
};

struct EdgeAcc {
  // (src, dst) -> (weight, kind)
  std::map<std::pair<int, int>, std::pair<Rational, EdgeKind>> edges;

  void add(int src, int dst, Rational w, EdgeKind kind) {
    auto [it, fresh] = edges.emplace(std::make_pair(src, dst),
                                     std::make_pair(w, kind));
    if (!fresh) {
      it->second.first += w;
      if (kind == EdgeKind::DataFlow) it->second.second = EdgeKind::DataFlow;
    }
  }
};

struct Walker {
  const Cfg& g;
  const std::map<std::string, int>& binder_field;
  Slicer& slicer;
  EdgeAcc& acc;

  void walk(int id, PathState st) {
    const CfgNode& n = g.node(id);
    st.step++;
    for (const auto& v : ordered_vars(n)) {
      auto bf = binder_field.find(v);
      if (bf == binder_field.end()) continue;
      int field = bf->second;
      if (st.accessed_fields.count(field)) continue;  // re-access: warm
      if (st.last_field >= 0 && st.last_field != field) {
        EdgeKind kind = EdgeKind::ControlFlow;
        for (const auto& guard : st.guards) {
          if (guard.step > st.last_step && guard.slice->count(st.last_binder)) {
            kind = EdgeKind::DataFlow;
            break;
          }
        }
        acc.add(st.last_field, field, n.weight, kind);
      }
      st.accessed_fields.insert(field);
      st.last_field = field;
      st.last_binder = v;
      st.last_step = st.step;
    }
    if (n.kind == CfgNode::Kind::CaseScrut)
      st.guards.push_back(GuardInfo{st.step, &slicer.slice(n.expr->scrut)});
    for (int s : n.succs) walk(s, st);
  }
};

std::string fmt3(const Rational& w) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << w.to_double();
  return os.str();
}

}  // namespace

FieldAccessGraph build_field_access_graph(const Program& p, const FunDef& f,
                                          const Cfg& g, const DataFlowInfo& d,
                                          const std::string& dcon) {
  auto [dd, idx] = p.find_ctor(dcon);
  if (!dd) throw std::invalid_argument("unknown constructor '" + dcon + "'");
  const auto& fields = dd->ctors[static_cast<std::size_t>(idx)].fields;

  FieldAccessGraph out;
  out.fn = f.name;
  out.dcon = dcon;
  out.field_count = static_cast<int>(fields.size());
  for (std::size_t k = 0; k < fields.size(); ++k)
    out.field_names.push_back(std::to_string(k) + ":" + type_name(fields[k]));

  auto binders = dcon_binders(f, dcon);
  if (binders.empty()) return out;  // constructor never matched: empty graph

  Slicer slicer{g, d, {}};
  EdgeAcc acc;
  Walker{g, binders, slicer, acc}.walk(g.entry, PathState{});

  for (const auto& [key, val] : acc.edges) {
    AccessEdge e;
    e.src = key.first;
    e.dst = key.second;
    e.weight = val.first;
    e.kind = val.second;
    if (e.weight > Rational(1))
      throw std::logic_error("edge weight exceeds 1 in access graph");
    out.edges.push_back(e);
  }
  return out;
}

FieldAccessGraph merge_graphs(
    const std::vector<std::pair<FieldAccessGraph, Rational>>& parts) {
  if (parts.empty())
    throw std::invalid_argument("merge_graphs: no graphs given");
  FieldAccessGraph out;
  out.fn = "<merged>";
  out.dcon = parts.front().first.dcon;
  out.field_count = parts.front().first.field_count;
  out.field_names = parts.front().first.field_names;
  EdgeAcc acc;
  for (const auto& [g, w] : parts) {
    if (g.dcon != out.dcon || g.field_count != out.field_count)
      throw std::invalid_argument(
          "merge_graphs: mismatched constructor or field count");
    for (const auto& e : g.edges) acc.add(e.src, e.dst, e.weight * w, e.kind);
  }
  for (const auto& [key, val] : acc.edges) {
    AccessEdge e;
    e.src = key.first;
    e.dst = key.second;
    e.weight = val.first;
    e.kind = val.second;
    out.edges.push_back(e);
  }
  return out;
}

std::string emit_fag_dot(const FieldAccessGraph& g) {
  std::ostringstream os;
  os << "digraph fag {\n";
  os << "  label=\"" << g.dcon << " in " << g.fn << "\";\n";
  for (int k = 0; k < g.field_count; ++k) {
    os << "  f" << k << " [label=\""
       << (k < static_cast<int>(g.field_names.size())
               ? g.field_names[static_cast<std::size_t>(k)]
               : std::to_string(k))
       << "\"];\n";
  }
  for (const auto& e : g.edges) {
    os << "  f" << e.src << " -> f" << e.dst << " [label=\"" << fmt3(e.weight)
       << "\" color=" << (e.kind == EdgeKind::DataFlow ? "red" : "blue")
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string fag_json(const FieldAccessGraph& g) {
  std::ostringstream os;
  os << "{\"fn\": \"" << g.fn << "\", \"dcon\": \"" << g.dcon
     << "\", \"field_count\": " << g.field_count << ", \"edges\": [";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (i) os << ",";
    os << "\n  {\"src\": " << e.src << ", \"dst\": " << e.dst
       << ", \"w_num\": " << e.weight.num() << ", \"w_den\": "
       << e.weight.den() << ", \"kind\": \""
       << (e.kind == EdgeKind::DataFlow ? "DataFlow" : "ControlFlow")
       << "\"}";
  }
  os << "\n]}\n";
  return os.str();
}

}  // namespace layopt
