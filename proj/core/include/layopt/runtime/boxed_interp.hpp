#pragma once

#include <string>
#include <vector>

#include "layopt/lang/ast.hpp"
#include "layopt/runtime/value.hpp"

namespace layopt {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InterpLimits {
  long max_call_depth = 100000;
};

// Reference call-by-value interpreter.  Integer arithmetic wraps at 64 bits.
ValuePtr interp_boxed(const Program& p, const std::string& entry,
                      const std::vector<ValuePtr>& args,
                      const InterpLimits& limits = {});

ValuePtr interp_boxed_main(const Program& p, const InterpLimits& limits = {});

// 64-bit wrapping primitive semantics, shared with the packed interpreter.
std::int64_t wrap_add(std::int64_t a, std::int64_t b);
std::int64_t wrap_sub(std::int64_t a, std::int64_t b);
std::int64_t wrap_mul(std::int64_t a, std::int64_t b);
std::int64_t wrap_pow(std::int64_t base, std::int64_t exp);

ValuePtr eval_primop(PrimOp op, const std::vector<ValuePtr>& args);

}  // namespace layopt
