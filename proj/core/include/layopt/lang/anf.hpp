#pragma once

#include <string>

#include "layopt/lang/ast.hpp"

namespace layopt {

// Flattens nested applications into fresh let bindings, lifts literal
// arguments of function/constructor applications, and renames binders so
// every binder in a function body is unique.  Idempotent.
void normalize_anf(Program& p);

// True when every right-hand side argument is a variable (or, for primitive
// operations, a literal) and no nested applications remain.
bool is_anf(const Program& p);

// parse + typecheck + normalize_anf + typecheck (to fill annotations on
// bindings the normalizer introduced).
Program load_program(const std::string& text);

}  // namespace layopt
