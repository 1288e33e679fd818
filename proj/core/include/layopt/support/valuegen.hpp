#pragma once

#include <random>

#include "layopt/lang/ast.hpp"
#include "layopt/runtime/value.hpp"

namespace layopt {

// Seeded random value of a given type.  Recursive constructors are chosen
// freely until the depth budget runs out, then the generator falls back to
// a minimum-depth constructor so generation always terminates.
ValuePtr random_value(const Program& p, const Type& t, std::mt19937_64& rng,
                      int depth_budget = 5);

}  // namespace layopt
