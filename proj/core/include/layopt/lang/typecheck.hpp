#pragma once

#include <map>
#include <string>

#include "layopt/lang/ast.hpp"

namespace layopt {

// Bidirectional checking over the first-order language: resolves every let
// annotation, validates case coverage/arity and structural limits
// (<= 256 constructors per datatype, <= 64 fields per constructor).
// Throws TypeError; on success the program is annotated in place.
void typecheck(Program& p);

// Scope-sensitive type of a variable environment entry.
using VarTypes = std::map<std::string, Type>;

}  // namespace layopt
