#pragma once

#include <string>
#include <vector>

#include "layopt/lang/ast.hpp"
#include "layopt/rational.hpp"

namespace layopt {

// One node per let binding, case expression or terminal variable reference.
// Likelihood weights are exact rationals; a case splits its weight uniformly
// over the arms, so probability mass is conserved exactly.
struct CfgNode {
  enum class Kind { LetRhs, CaseScrut, Terminal };
  int id = 0;
  Kind kind = Kind::Terminal;
  const Expr* expr = nullptr;
  Rational weight;
  std::vector<int> succs;
};

struct Cfg {
  const FunDef* fn = nullptr;
  std::vector<CfgNode> nodes;  // indexed by id, preorder
  int entry = 0;

  const CfgNode& node(int id) const {
    return nodes[static_cast<std::size_t>(id)];
  }
};

// Function body must be typechecked and in ANF.
Cfg build_cfg(const FunDef& f, Rational weight = Rational(1));

// Deterministic topological order (ties broken by node id).
std::vector<int> topo_order(const Cfg& g);

std::string emit_cfg_dot(const Cfg& g);

}  // namespace layopt
