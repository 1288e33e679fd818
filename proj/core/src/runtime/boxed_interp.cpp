#include "layopt/runtime/boxed_interp.hpp"

#include <map>

namespace layopt {

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) +
                                   static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) -
                                   static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) *
                                   static_cast<std::uint64_t>(b));
}

std::int64_t wrap_pow(std::int64_t base, std::int64_t exp) {
  if (exp < 0) return 0;
  std::uint64_t acc = 1;
  std::uint64_t b = static_cast<std::uint64_t>(base);
  std::uint64_t e = static_cast<std::uint64_t>(exp);
  while (e) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return static_cast<std::int64_t>(acc);
}

ValuePtr eval_primop(PrimOp op, const std::vector<ValuePtr>& args) {
  auto i = [&](int k) { return args[static_cast<std::size_t>(k)]->i; };
  auto b = [&](int k) { return args[static_cast<std::size_t>(k)]->b; };
  auto s = [&](int k) -> const std::string& {
    return args[static_cast<std::size_t>(k)]->s;
  };
  switch (op) {
    case PrimOp::Add: return Value::of_int(wrap_add(i(0), i(1)));
    case PrimOp::Sub: return Value::of_int(wrap_sub(i(0), i(1)));
    case PrimOp::Mul: return Value::of_int(wrap_mul(i(0), i(1)));
    case PrimOp::Pow: return Value::of_int(wrap_pow(i(0), i(1)));
    case PrimOp::Eq: return Value::of_bool(i(0) == i(1));
    case PrimOp::Lt: return Value::of_bool(i(0) < i(1));
    case PrimOp::And: return Value::of_bool(b(0) && b(1));
    case PrimOp::Or: return Value::of_bool(b(0) || b(1));
    case PrimOp::Not: return Value::of_bool(!b(0));
    case PrimOp::StrEq: return Value::of_bool(s(0) == s(1));
    case PrimOp::StrContains:
      return Value::of_bool(s(0).find(s(1)) != std::string::npos);
    case PrimOp::StrConcat: return Value::of_str(s(0) + s(1));
  }
  throw EvalError("unknown primitive");
}

namespace {

struct Interp {
  const Program& p;
  const InterpLimits& limits;
  long depth = 0;

  using Env = std::map<std::string, ValuePtr>;

  ValuePtr lookup(const Env& env, const std::string& v) {
    auto it = env.find(v);
    if (it == env.end()) throw EvalError("unbound variable '" + v + "'");
    return it->second;
  }

  ValuePtr eval_arg(const Env& env, const Arg& a) {
    switch (a.kind) {
      case Arg::Kind::Var: return lookup(env, a.var);
      case Arg::Kind::Lit: return Value::of_lit(a.lit);
      default: return eval_rhs(env, *a.nested);
    }
  }

  ValuePtr eval_rhs(const Env& env, const Rhs& r) {
    switch (r.kind) {
      case Rhs::Kind::Lit:
        return Value::of_lit(r.lit);
      case Rhs::Kind::PrimApp: {
        std::vector<ValuePtr> args;
        args.reserve(r.args.size());
        for (const auto& a : r.args) args.push_back(eval_arg(env, a));
        return eval_primop(r.op, args);
      }
      case Rhs::Kind::ConApp: {
        auto [dd, idx] = p.find_ctor(r.callee);
        if (!dd) throw EvalError("unknown constructor '" + r.callee + "'");
        std::vector<ValuePtr> fields;
        fields.reserve(r.args.size());
        for (const auto& a : r.args) fields.push_back(eval_arg(env, a));
        return Value::of_data(dd->name, r.callee, idx, std::move(fields));
      }
      case Rhs::Kind::FunApp: {
        const FunDef* f = p.find_function(r.callee);
        if (!f) throw EvalError("unknown function '" + r.callee + "'");
        std::vector<ValuePtr> args;
        args.reserve(r.args.size());
        for (const auto& a : r.args) args.push_back(eval_arg(env, a));
        return call(*f, std::move(args));
      }
    }
    throw EvalError("unreachable rhs");
  }

  ValuePtr call(const FunDef& f, std::vector<ValuePtr> args) {
    if (++depth > limits.max_call_depth)
      throw EvalError("call depth limit exceeded in '" + f.name + "'");
    Env env;
    for (std::size_t k = 0; k < f.params.size(); ++k)
      env[f.params[k].first] = std::move(args[k]);
    ValuePtr result = eval_expr(env, *f.body);
    --depth;
    return result;
  }

  ValuePtr eval_expr(Env& env, const Expr& start) {
    const Expr* e = &start;
    for (;;) {
      switch (e->kind) {
        case Expr::Kind::Let:
          env[e->var] = eval_rhs(env, e->rhs);
          e = e->body.get();
          break;
        case Expr::Kind::Case: {
          ValuePtr s = lookup(env, e->scrut);
          const CaseArm* chosen = nullptr;
          if (s->kind == Value::Kind::Bool) {
            for (const auto& arm : e->arms)
              if ((arm.ctor == "True") == s->b) chosen = &arm;
          } else if (s->kind == Value::Kind::Data) {
            for (const auto& arm : e->arms)
              if (arm.ctor == s->dcon) chosen = &arm;
          } else {
            throw EvalError("case on a non-matchable value");
          }
          if (!chosen) throw EvalError("no arm matches " + value_to_string(s));
          for (std::size_t k = 0; k < chosen->binders.size(); ++k)
            env[chosen->binders[k]] = s->fields[k];
          e = chosen->body.get();
          break;
        }
        case Expr::Kind::Var:
          return lookup(env, e->ref);
      }
    }
  }
};

}  // namespace

ValuePtr interp_boxed(const Program& p, const std::string& entry,
                      const std::vector<ValuePtr>& args,
                      const InterpLimits& limits) {
  const FunDef* f = p.find_function(entry);
  if (!f) throw EvalError("unknown entry function '" + entry + "'");
  if (args.size() != f->params.size())
    throw EvalError("entry arity mismatch for '" + entry + "'");
  Interp in{p, limits};
  return in.call(*f, args);
}

ValuePtr interp_boxed_main(const Program& p, const InterpLimits& limits) {
  Interp in{p, limits};
  Interp::Env env;
  return in.eval_expr(env, *p.main_expr);
}

}  // namespace layopt
