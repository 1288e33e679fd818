#include "layopt/runtime/value.hpp"

#include <sstream>

namespace layopt {

ValuePtr Value::of_int(std::int64_t v) {
  auto p = std::make_shared<Value>();
  p->kind = Kind::Int;
  p->i = v;
  return p;
}

ValuePtr Value::of_bool(bool v) {
  auto p = std::make_shared<Value>();
  p->kind = Kind::Bool;
  p->b = v;
  return p;
}

ValuePtr Value::of_str(std::string v) {
  auto p = std::make_shared<Value>();
  p->kind = Kind::Str;
  p->s = std::move(v);
  return p;
}

ValuePtr Value::of_data(std::string tycon, std::string dcon, int ordinal,
                        std::vector<ValuePtr> fields) {
  auto p = std::make_shared<Value>();
  p->kind = Kind::Data;
  p->tycon = std::move(tycon);
  p->dcon = std::move(dcon);
  p->ordinal = ordinal;
  p->fields = std::move(fields);
  return p;
}

ValuePtr Value::of_lit(const Lit& l) {
  switch (l.kind) {
    case Lit::Kind::Int: return of_int(l.int_val);
    case Lit::Kind::Bool: return of_bool(l.bool_val);
    default: return of_str(l.str_val);
  }
}

bool value_equal(const Value& a, const Value& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Value::Kind::Int: return a.i == b.i;
    case Value::Kind::Bool: return a.b == b.b;
    case Value::Kind::Str: return a.s == b.s;
    case Value::Kind::Data: {
      if (a.dcon != b.dcon || a.fields.size() != b.fields.size()) return false;
      for (std::size_t k = 0; k < a.fields.size(); ++k)
        if (!value_equal(*a.fields[k], *b.fields[k])) return false;
      return true;
    }
  }
  return false;
}

namespace {

void render(std::ostringstream& os, const Value& v) {
  switch (v.kind) {
    case Value::Kind::Int: os << v.i; return;
    case Value::Kind::Bool: os << (v.b ? "True" : "False"); return;
    case Value::Kind::Str: os << '"' << v.s << '"'; return;
    case Value::Kind::Data:
      if (v.fields.empty()) {
        os << v.dcon;
        return;
      }
      os << "(" << v.dcon;
      for (const auto& f : v.fields) {
        os << " ";
        render(os, *f);
      }
      os << ")";
      return;
  }
}

}  // namespace

std::string value_to_string(const Value& v) {
  std::ostringstream os;
  render(os, v);
  return os.str();
}

}  // namespace layopt
