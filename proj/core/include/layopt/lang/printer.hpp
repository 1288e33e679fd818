#pragma once

#include <string>

#include "layopt/lang/ast.hpp"

namespace layopt {

// Deterministic `.lay` emitter: 2-space indent, one let per line,
// explicit braces and semicolons around case arms.
std::string print_program(const Program& p);
std::string print_expr(const Expr& e, int indent = 0);
std::string print_rhs(const Rhs& r);

}  // namespace layopt
