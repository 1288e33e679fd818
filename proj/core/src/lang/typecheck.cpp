#include "layopt/lang/typecheck.hpp"

#include <set>

namespace layopt {

namespace {

struct Checker {
  Program& p;

  const FunDef* fn_or_throw(const std::string& name, SrcLoc loc) {
    const FunDef* f = p.find_function(name);
    if (!f) throw TypeError("unknown function '" + name + "'", loc);
    return f;
  }

  Type var_type(const VarTypes& env, const std::string& v, SrcLoc loc) {
    auto it = env.find(v);
    if (it == env.end())
      throw TypeError("unbound variable '" + v + "'", loc);
    return it->second;
  }

  Type arg_type(const VarTypes& env, const Arg& a) {
    switch (a.kind) {
      case Arg::Kind::Var: return var_type(env, a.var, a.loc);
      case Arg::Kind::Lit: return a.lit.type();
      default: return rhs_type(env, *a.nested);
    }
  }

  void want(const Type& got, const Type& wanted, const char* what,
            SrcLoc loc) {
    if (got != wanted)
      throw TypeError(std::string(what) + ": expected " + type_name(wanted) +
                          ", found " + type_name(got),
                      loc);
  }

  Type rhs_type(const VarTypes& env, const Rhs& r) {
    switch (r.kind) {
      case Rhs::Kind::Lit:
        return r.lit.type();
      case Rhs::Kind::FunApp: {
        const FunDef* f = fn_or_throw(r.callee, r.loc);
        if (r.args.size() != f->params.size())
          throw TypeError("call of '" + r.callee + "' with " +
                              std::to_string(r.args.size()) +
                              " argument(s), expected " +
                              std::to_string(f->params.size()),
                          r.loc);
        for (std::size_t i = 0; i < r.args.size(); ++i)
          want(arg_type(env, r.args[i]), f->params[i].second,
               "argument type mismatch", r.loc);
        return f->ret;
      }
      case Rhs::Kind::ConApp: {
        auto [dd, idx] = p.find_ctor(r.callee);
        if (!dd)
          throw TypeError("unknown constructor '" + r.callee + "'", r.loc);
        const auto& fields = dd->ctors[static_cast<std::size_t>(idx)].fields;
        if (r.args.size() != fields.size())
          throw TypeError("constructor '" + r.callee + "' applied to " +
                              std::to_string(r.args.size()) +
                              " argument(s), expected " +
                              std::to_string(fields.size()),
                          r.loc);
        for (std::size_t i = 0; i < r.args.size(); ++i)
          want(arg_type(env, r.args[i]), fields[i], "constructor field type",
               r.loc);
        return Type::packed(dd->name);
      }
      case Rhs::Kind::PrimApp: {
        if (static_cast<int>(r.args.size()) != primop_arity(r.op))
          throw TypeError(std::string("primitive '") + primop_name(r.op) +
                              "' expects " +
                              std::to_string(primop_arity(r.op)) +
                              " argument(s)",
                          r.loc);
        auto a = [&](int i) {
          return arg_type(env, r.args[static_cast<std::size_t>(i)]);
        };
        const Type ti = Type::scalar(Prim::Int);
        const Type tb = Type::scalar(Prim::Bool);
        const Type ts = Type::scalar(Prim::Str);
        switch (r.op) {
          case PrimOp::Add: case PrimOp::Sub: case PrimOp::Mul:
          case PrimOp::Pow:
            want(a(0), ti, "primitive operand", r.loc);
            want(a(1), ti, "primitive operand", r.loc);
            return ti;
          case PrimOp::Eq: case PrimOp::Lt:
            want(a(0), ti, "primitive operand", r.loc);
            want(a(1), ti, "primitive operand", r.loc);
            return tb;
          case PrimOp::And: case PrimOp::Or:
            want(a(0), tb, "primitive operand", r.loc);
            want(a(1), tb, "primitive operand", r.loc);
            return tb;
          case PrimOp::Not:
            want(a(0), tb, "primitive operand", r.loc);
            return tb;
          case PrimOp::StrEq: case PrimOp::StrContains:
            want(a(0), ts, "primitive operand", r.loc);
            want(a(1), ts, "primitive operand", r.loc);
            return tb;
          case PrimOp::StrConcat:
            want(a(0), ts, "primitive operand", r.loc);
            want(a(1), ts, "primitive operand", r.loc);
            return ts;
        }
        throw TypeError("unreachable primitive", r.loc);
      }
    }
    throw TypeError("unreachable rhs", r.loc);
  }

  Type check_expr(VarTypes env, Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Let: {
        Type t = rhs_type(env, e.rhs);
        if (e.ann && *e.ann != t)
          throw TypeError("let annotation " + type_name(*e.ann) +
                              " does not match right-hand side of type " +
                              type_name(t),
                          e.loc);
        e.ann = t;
        if (env.count(e.var))
          throw TypeError("rebinding of '" + e.var + "' shadows an "
                          "enclosing binding", e.loc);
        env[e.var] = t;
        return check_expr(std::move(env), *e.body);
      }
      case Expr::Kind::Case: {
        Type st = var_type(env, e.scrut, e.loc);
        if (st.is_scalar() && st.prim != Prim::Bool)
          throw TypeError("case scrutinee must be a datatype or Bool", e.loc);
        std::optional<Type> result;
        auto join = [&](Type t, SrcLoc loc) {
          if (!result) result = t;
          else if (*result != t)
            throw TypeError("case arms disagree: " + type_name(*result) +
                                " vs " + type_name(t),
                            loc);
        };
        if (st.is_bool()) {
          std::set<std::string> seen;
          for (auto& arm : e.arms) {
            if (arm.ctor != "True" && arm.ctor != "False")
              throw TypeError("pattern '" + arm.ctor +
                                  "' does not match Bool",
                              arm.loc);
            if (!seen.insert(arm.ctor).second)
              throw TypeError("duplicate pattern '" + arm.ctor + "'", arm.loc);
            if (!arm.binders.empty())
              throw TypeError("Bool pattern binds no variables", arm.loc);
            join(check_expr(env, *arm.body), arm.loc);
          }
          if (seen.size() != 2)
            throw TypeError("non-exhaustive match on Bool", e.loc);
          return *result;
        }
        const DataDef* dd = p.find_datatype(st.tycon);
        if (!dd) throw TypeError("unknown datatype '" + st.tycon + "'", e.loc);
        std::set<std::string> seen;
        for (auto& arm : e.arms) {
          auto [add, idx] = p.find_ctor(arm.ctor);
          if (!add || add != dd)
            throw TypeError("pattern '" + arm.ctor +
                                "' is not a constructor of " + dd->name,
                            arm.loc);
          if (!seen.insert(arm.ctor).second)
            throw TypeError("duplicate pattern '" + arm.ctor + "'", arm.loc);
          const auto& fields = dd->ctors[static_cast<std::size_t>(idx)].fields;
          if (arm.binders.size() != fields.size())
            throw TypeError("pattern '" + arm.ctor + "' binds " +
                                std::to_string(arm.binders.size()) +
                                " variable(s), constructor has " +
                                std::to_string(fields.size()) + " field(s)",
                            arm.loc);
          VarTypes inner = env;
          std::set<std::string> armseen;
          for (std::size_t i = 0; i < fields.size(); ++i) {
            const std::string& b = arm.binders[i];
            if (!armseen.insert(b).second)
              throw TypeError("duplicate binder '" + b + "' in pattern",
                              arm.loc);
            if (inner.count(b))
              throw TypeError("rebinding of '" + b +
                                  "' shadows an enclosing binding",
                              arm.loc);
            inner[b] = fields[i];
          }
          join(check_expr(std::move(inner), *arm.body), arm.loc);
        }
        if (seen.size() != dd->ctors.size())
          throw TypeError("non-exhaustive match on " + dd->name, e.loc);
        return *result;
      }
      case Expr::Kind::Var:
        return var_type(env, e.ref, e.loc);
    }
    throw TypeError("unreachable expr", e.loc);
  }
};

}  // namespace

void typecheck(Program& p) {
  for (const auto& d : p.datatypes) {
    if (d.ctors.size() > 256)
      throw TypeError("datatype '" + d.name + "' has more than 256 "
                      "constructors", d.loc);
    for (const auto& c : d.ctors)
      if (c.fields.size() > 64)
        throw TypeError("constructor '" + c.name + "' has more than 64 "
                        "fields", c.loc);
  }
  for (const auto& n : p.notes) {
    auto [dd, idx] = p.find_ctor(n.dcon);
    if (!dd)
      throw TypeError("ANN pragma names unknown constructor '" + n.dcon + "'",
                      n.loc);
    int nfields = static_cast<int>(
        dd->ctors[static_cast<std::size_t>(idx)].fields.size());
    auto in_range = [&](int f) { return f >= 0 && f < nfields; };
    if (!in_range(n.field) ||
        (n.kind == LayoutNote::Kind::At ? !in_range(n.other)
                                        : !in_range(n.other)))
      throw TypeError("ANN pragma field out of range for '" + n.dcon + "'",
                      n.loc);
  }
  Checker ck{p};
  for (auto& f : p.functions) {
    VarTypes env;
    for (const auto& [v, t] : f.params) {
      if (env.count(v))
        throw TypeError("duplicate parameter '" + v + "'", f.loc);
      if (t.is_packed() && !p.find_datatype(t.tycon))
        throw TypeError("unknown type '" + t.tycon + "' in signature of '" +
                            f.name + "'",
                        f.loc);
      env[v] = t;
    }
    if (f.ret.is_packed() && !p.find_datatype(f.ret.tycon))
      throw TypeError("unknown return type in signature of '" + f.name + "'",
                      f.loc);
    Type got = ck.check_expr(std::move(env), *f.body);
    if (got != f.ret)
      throw TypeError("function '" + f.name + "' returns " + type_name(got) +
                          ", signature says " + type_name(f.ret),
                      f.loc);
  }
  ck.check_expr(VarTypes{}, *p.main_expr);
}

}  // namespace layopt
