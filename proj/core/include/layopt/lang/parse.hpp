#pragma once

#include <string>

#include "layopt/lang/ast.hpp"

namespace layopt {

// Parses `.lay` source text.  Duplicate top-level names, unknown types and
// malformed pragmas are rejected here; type errors are the typechecker's job.
Program parse_program(const std::string& text);

}  // namespace layopt
