#include "layopt/solver/lp_writer.hpp"

#include <sstream>

namespace layopt {

std::string emit_lp(const FieldAccessGraph& g, const FieldAttrTable& attrs,
                    const CostParams& params,
                    const std::vector<LayoutConstraint>& constraints) {
  std::ostringstream os;
  int n = g.field_count;
  os << "\\ layout integer program: constructor " << g.dcon << ", function "
     << g.fn << "\n";
  os << "\\ " << g.edges.size() << " edge(s), " << n << " field position "
     << "variable(s)\n\n";
  for (int i = 0; i < n; ++i)
    os << "var f" << i << " in [0, " << n << ")\n";
  os << "\n";
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      os << "alldiff: f" << i << " != f" << j << "\n";
  os << "\n";
  std::vector<std::string> obj_terms;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto& e = g.edges[k];
    const RegimeCosts& r = edge_regime(e, attrs.get(g.dcon, e.src),
                                       attrs.get(g.dcon, e.dst), params);
    bool rigid = &r == &params.df;
    os << "edge e" << k << ": f" << e.src << " -> f" << e.dst << "  kind="
       << (e.kind == EdgeKind::DataFlow ? "DataFlow" : "ControlFlow")
       << "  w=" << e.weight.to_string() << "  regime="
       << (rigid ? "rigid" : "inlineable") << "\n";
    os << "  ind: f" << e.dst << " - f" << e.src << " == 1  => c_e" << k
       << " = " << r.succ.to_string() << "\n";
    os << "  ind: f" << e.dst << " - f" << e.src << " >  1  => c_e" << k
       << " = " << r.after.to_string() << "\n";
    os << "  ind: f" << e.dst << " - f" << e.src << " == -1 => c_e" << k
       << " = " << r.pred.to_string() << "\n";
    os << "  ind: f" << e.dst << " - f" << e.src << " <  -1 => c_e" << k
       << " = " << r.before.to_string() << "\n";
    obj_terms.push_back(e.weight.to_string() + " * c_e" + std::to_string(k));
  }
  os << "\n";
  for (const auto& c : constraints) {
    switch (c.kind) {
      case LayoutConstraint::Kind::After:
        os << "constraint: f" << c.field << " > f" << c.other << "\n";
        break;
      case LayoutConstraint::Kind::RightAfter:
        os << "constraint: f" << c.field << " == f" << c.other << " + 1\n";
        break;
      case LayoutConstraint::Kind::Absolute:
        os << "constraint: f" << c.field << " == " << c.other << "\n";
        break;
    }
  }
  if (!constraints.empty()) os << "\n";
  os << "minimize: ";
  if (obj_terms.empty()) {
    os << "0";
  } else {
    for (std::size_t k = 0; k < obj_terms.size(); ++k) {
      if (k) os << " + ";
      os << obj_terms[k];
    }
  }
  os << "\n";
  return os.str();
}

}  // namespace layopt
