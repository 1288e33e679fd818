#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "layopt/lang/ast.hpp"

namespace layopt {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

// Immutable boxed runtime value.
struct Value {
  enum class Kind { Int, Bool, Str, Data };
  Kind kind = Kind::Int;
  std::int64_t i = 0;
  bool b = false;
  std::string s;
  std::string tycon;
  std::string dcon;
  int ordinal = 0;  // constructor position within its datatype
  std::vector<ValuePtr> fields;

  static ValuePtr of_int(std::int64_t v);
  static ValuePtr of_bool(bool v);
  static ValuePtr of_str(std::string v);
  static ValuePtr of_data(std::string tycon, std::string dcon, int ordinal,
                          std::vector<ValuePtr> fields);
  static ValuePtr of_lit(const Lit& l);
};

bool value_equal(const Value& a, const Value& b);
inline bool value_equal(const ValuePtr& a, const ValuePtr& b) {
  return value_equal(*a, *b);
}

std::string value_to_string(const Value& v);
inline std::string value_to_string(const ValuePtr& v) {
  return value_to_string(*v);
}

}  // namespace layopt
