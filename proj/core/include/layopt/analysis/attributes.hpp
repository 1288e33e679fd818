#pragma once

#include <map>
#include <string>

#include "layopt/lang/ast.hpp"

namespace layopt {

// Field attribute bits.  Scalar and Recursive are mutually exclusive;
// SelfRecursive and Inlineable imply Recursive.
enum FieldAttr : unsigned {
  kAttrScalar = 1u,
  kAttrRecursive = 2u,
  kAttrSelfRecursive = 4u,
  kAttrInlineable = 8u,
};

// Attributes of the fields one function binds via pattern matches.
// Fields the function never binds carry no entry.
struct FieldAttrTable {
  std::string fn;
  std::map<std::pair<std::string, int>, unsigned> entries;

  unsigned get(const std::string& dcon, int field) const {
    auto it = entries.find({dcon, field});
    return it == entries.end() ? 0u : it->second;
  }
  bool inlineable(const std::string& dcon, int field) const {
    return (get(dcon, field) & kAttrInlineable) != 0;
  }
};

FieldAttrTable classify_fields(const Program& p, const FunDef& f);

// Union of per-function attribute masks, used by global layout solving.
FieldAttrTable merge_attr_tables(const std::vector<FieldAttrTable>& tables);

std::string attrs_json(const FieldAttrTable& t);

}  // namespace layopt
