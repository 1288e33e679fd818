#include "layopt/lang/ast.hpp"

namespace layopt {

std::string type_name(const Type& t) {
  if (t.is_packed()) return t.tycon;
  switch (t.prim) {
    case Prim::Int: return "Int";
    case Prim::Bool: return "Bool";
    default: return "Str";
  }
}

const char* primop_name(PrimOp op) {
  switch (op) {
    case PrimOp::Add: return "add";
    case PrimOp::Sub: return "sub";
    case PrimOp::Mul: return "mul";
    case PrimOp::Pow: return "pow";
    case PrimOp::Eq: return "eq";
    case PrimOp::Lt: return "lt";
    case PrimOp::And: return "and";
    case PrimOp::Or: return "or";
    case PrimOp::Not: return "not";
    case PrimOp::StrEq: return "strEq";
    case PrimOp::StrContains: return "strContains";
    case PrimOp::StrConcat: return "strConcat";
  }
  return "?";
}

std::optional<PrimOp> primop_by_name(const std::string& name) {
  static const std::pair<const char*, PrimOp> table[] = {
      {"add", PrimOp::Add},         {"sub", PrimOp::Sub},
      {"mul", PrimOp::Mul},         {"pow", PrimOp::Pow},
      {"eq", PrimOp::Eq},           {"lt", PrimOp::Lt},
      {"and", PrimOp::And},         {"or", PrimOp::Or},
      {"not", PrimOp::Not},         {"strEq", PrimOp::StrEq},
      {"strContains", PrimOp::StrContains}, {"strConcat", PrimOp::StrConcat},
  };
  for (const auto& [n, op] : table)
    if (name == n) return op;
  return std::nullopt;
}

int primop_arity(PrimOp op) {
  return op == PrimOp::Not ? 1 : 2;
}

Arg clone(const Arg& a) {
  Arg out;
  out.kind = a.kind;
  out.var = a.var;
  out.lit = a.lit;
  out.loc = a.loc;
  if (a.nested) out.nested = std::make_unique<Rhs>(clone(*a.nested));
  return out;
}

Rhs clone(const Rhs& r) {
  Rhs out;
  out.kind = r.kind;
  out.callee = r.callee;
  out.op = r.op;
  out.lit = r.lit;
  out.loc = r.loc;
  out.args.reserve(r.args.size());
  for (const auto& a : r.args) out.args.push_back(clone(a));
  return out;
}

std::unique_ptr<Expr> clone(const Expr& e) {
  auto out = std::make_unique<Expr>();
  out->kind = e.kind;
  out->loc = e.loc;
  switch (e.kind) {
    case Expr::Kind::Let:
      out->var = e.var;
      out->ann = e.ann;
      out->rhs = clone(e.rhs);
      out->body = clone(*e.body);
      break;
    case Expr::Kind::Case:
      out->scrut = e.scrut;
      for (const auto& arm : e.arms) {
        CaseArm a;
        a.ctor = arm.ctor;
        a.binders = arm.binders;
        a.body = clone(*arm.body);
        a.loc = arm.loc;
        out->arms.push_back(std::move(a));
      }
      break;
    case Expr::Kind::Var:
      out->ref = e.ref;
      break;
  }
  return out;
}

namespace {

bool lit_equal(const Lit& a, const Lit& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Lit::Kind::Int: return a.int_val == b.int_val;
    case Lit::Kind::Bool: return a.bool_val == b.bool_val;
    default: return a.str_val == b.str_val;
  }
}

bool arg_equal(const Arg& a, const Arg& b);

bool rhs_equal(const Rhs& a, const Rhs& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Rhs::Kind::Lit: return lit_equal(a.lit, b.lit);
    case Rhs::Kind::PrimApp:
      if (a.op != b.op) return false;
      break;
    default:
      if (a.callee != b.callee) return false;
      break;
  }
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!arg_equal(a.args[i], b.args[i])) return false;
  return true;
}

bool arg_equal(const Arg& a, const Arg& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Arg::Kind::Var: return a.var == b.var;
    case Arg::Kind::Lit: return lit_equal(a.lit, b.lit);
    default: return rhs_equal(*a.nested, *b.nested);
  }
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Let:
      return a.var == b.var && rhs_equal(a.rhs, b.rhs) &&
             structurally_equal(*a.body, *b.body);
    case Expr::Kind::Case: {
      if (a.scrut != b.scrut || a.arms.size() != b.arms.size()) return false;
      for (std::size_t i = 0; i < a.arms.size(); ++i) {
        const auto& x = a.arms[i];
        const auto& y = b.arms[i];
        if (x.ctor != y.ctor || x.binders != y.binders ||
            !structurally_equal(*x.body, *y.body))
          return false;
      }
      return true;
    }
    default:
      return a.ref == b.ref;
  }
}

const DataDef* Program::find_datatype(const std::string& name) const {
  for (const auto& d : datatypes)
    if (d.name == name) return &d;
  return nullptr;
}

const FunDef* Program::find_function(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

std::pair<const DataDef*, int> Program::find_ctor(
    const std::string& name) const {
  for (const auto& d : datatypes)
    for (std::size_t i = 0; i < d.ctors.size(); ++i)
      if (d.ctors[i].name == name) return {&d, static_cast<int>(i)};
  return {nullptr, -1};
}

Program clone(const Program& p) {
  Program out;
  out.datatypes = p.datatypes;
  out.notes = p.notes;
  for (const auto& f : p.functions) {
    FunDef g;
    g.name = f.name;
    g.params = f.params;
    g.ret = f.ret;
    g.body = clone(*f.body);
    g.loc = f.loc;
    out.functions.push_back(std::move(g));
  }
  if (p.main_expr) out.main_expr = clone(*p.main_expr);
  return out;
}

bool structurally_equal(const Program& a, const Program& b) {
  if (a.datatypes.size() != b.datatypes.size() ||
      a.functions.size() != b.functions.size())
    return false;
  for (std::size_t i = 0; i < a.datatypes.size(); ++i) {
    const auto& x = a.datatypes[i];
    const auto& y = b.datatypes[i];
    if (x.name != y.name || x.ctors.size() != y.ctors.size()) return false;
    for (std::size_t j = 0; j < x.ctors.size(); ++j) {
      if (x.ctors[j].name != y.ctors[j].name ||
          x.ctors[j].fields != y.ctors[j].fields)
        return false;
    }
  }
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    const auto& f = a.functions[i];
    const auto& g = b.functions[i];
    if (f.name != g.name || f.params != g.params || f.ret != g.ret)
      return false;
    if (!structurally_equal(*f.body, *g.body)) return false;
  }
  if (static_cast<bool>(a.main_expr) != static_cast<bool>(b.main_expr))
    return false;
  if (a.main_expr && !structurally_equal(*a.main_expr, *b.main_expr))
    return false;
  return true;
}

}  // namespace layopt
