#include "layopt/lang/anf.hpp"

#include <map>
#include <set>

#include "layopt/lang/parse.hpp"
#include "layopt/lang/typecheck.hpp"

namespace layopt {

namespace {

void collect_names(const Expr& e, std::set<std::string>& out) {
  switch (e.kind) {
    case Expr::Kind::Let:
      out.insert(e.var);
      collect_names(*e.body, out);
      break;
    case Expr::Kind::Case:
      for (const auto& arm : e.arms) {
        for (const auto& b : arm.binders) out.insert(b);
        collect_names(*arm.body, out);
      }
      break;
    case Expr::Kind::Var:
      break;
  }
}

struct Renamer {
  std::set<std::string>& taken;

  std::string fresh_variant(const std::string& base) {
    for (int k = 2;; ++k) {
      std::string cand = base + "_" + std::to_string(k);
      if (taken.insert(cand).second) return cand;
    }
  }

  std::string bind(const std::string& name,
                   std::map<std::string, std::string>& scope) {
    std::string chosen =
        seen.insert(name).second ? name : fresh_variant(name);
    scope[name] = chosen;
    return chosen;
  }

  void rename_rhs(Rhs& r, const std::map<std::string, std::string>& scope) {
    for (auto& a : r.args) {
      if (a.kind == Arg::Kind::Var) {
        auto it = scope.find(a.var);
        if (it != scope.end()) a.var = it->second;
      } else if (a.kind == Arg::Kind::Nested) {
        rename_rhs(*a.nested, scope);
      }
    }
  }

  void rename(Expr& e, std::map<std::string, std::string> scope) {
    switch (e.kind) {
      case Expr::Kind::Let:
        rename_rhs(e.rhs, scope);
        e.var = bind(e.var, scope);
        rename(*e.body, std::move(scope));
        break;
      case Expr::Kind::Case: {
        auto it = scope.find(e.scrut);
        if (it != scope.end()) e.scrut = it->second;
        for (auto& arm : e.arms) {
          auto inner = scope;
          for (auto& b : arm.binders) b = bind(b, inner);
          rename(*arm.body, std::move(inner));
        }
        break;
      }
      case Expr::Kind::Var: {
        auto it2 = scope.find(e.ref);
        if (it2 != scope.end()) e.ref = it2->second;
        break;
      }
    }
  }

  std::set<std::string> seen;
};

struct Flattener {
  std::set<std::string>& taken;
  int counter = 0;

  std::string fresh() {
    for (;;) {
      std::string cand = "t" + std::to_string(++counter);
      if (taken.insert(cand).second) return cand;
    }
  }

  // Rewrites args to variables (literals stay only under PrimApp), emitting
  // evaluation-order lets for whatever had to be lifted.
  Rhs flatten_rhs(Rhs r, std::vector<std::pair<std::string, Rhs>>& prelude) {
    bool lift_lits = r.kind == Rhs::Kind::FunApp || r.kind == Rhs::Kind::ConApp;
    for (auto& a : r.args) {
      if (a.kind == Arg::Kind::Nested) {
        Rhs inner = flatten_rhs(std::move(*a.nested), prelude);
        std::string t = fresh();
        prelude.emplace_back(t, std::move(inner));
        a = Arg::of_var(t, a.loc);
      } else if (a.kind == Arg::Kind::Lit && lift_lits) {
        std::string t = fresh();
        Rhs lit;
        lit.kind = Rhs::Kind::Lit;
        lit.lit = a.lit;
        lit.loc = a.loc;
        prelude.emplace_back(t, std::move(lit));
        a = Arg::of_var(t, a.loc);
      }
    }
    return r;
  }

  std::unique_ptr<Expr> flatten(std::unique_ptr<Expr> e) {
    switch (e->kind) {
      case Expr::Kind::Let: {
        std::vector<std::pair<std::string, Rhs>> prelude;
        e->rhs = flatten_rhs(std::move(e->rhs), prelude);
        e->ann.reset();  // re-typecheck recomputes annotations
        e->body = flatten(std::move(e->body));
        std::unique_ptr<Expr> out = std::move(e);
        for (auto it = prelude.rbegin(); it != prelude.rend(); ++it) {
          auto let = std::make_unique<Expr>();
          let->kind = Expr::Kind::Let;
          let->var = it->first;
          let->rhs = std::move(it->second);
          let->loc = out->loc;
          let->body = std::move(out);
          out = std::move(let);
        }
        return out;
      }
      case Expr::Kind::Case:
        for (auto& arm : e->arms) arm.body = flatten(std::move(arm.body));
        return e;
      case Expr::Kind::Var:
        return e;
    }
    return e;
  }
};

void normalize_fun_body(std::unique_ptr<Expr>& body,
                        const std::vector<std::pair<std::string, Type>>& params) {
  std::set<std::string> taken;
  for (const auto& [v, t] : params) taken.insert(v);
  collect_names(*body, taken);

  Renamer rn{taken};
  std::map<std::string, std::string> scope;
  for (const auto& [v, t] : params) {
    rn.seen.insert(v);
    scope[v] = v;
  }
  rn.rename(*body, std::move(scope));

  Flattener fl{taken};
  body = fl.flatten(std::move(body));
}

}  // namespace

void normalize_anf(Program& p) {
  for (auto& f : p.functions) normalize_fun_body(f.body, f.params);
  std::vector<std::pair<std::string, Type>> none;
  normalize_fun_body(p.main_expr, none);
}

namespace {

bool rhs_is_anf(const Rhs& r) {
  bool lits_ok = r.kind == Rhs::Kind::PrimApp;
  for (const auto& a : r.args) {
    if (a.kind == Arg::Kind::Nested) return false;
    if (a.kind == Arg::Kind::Lit && !lits_ok) return false;
  }
  return true;
}

bool expr_is_anf(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Let:
      return rhs_is_anf(e.rhs) && expr_is_anf(*e.body);
    case Expr::Kind::Case:
      for (const auto& arm : e.arms)
        if (!expr_is_anf(*arm.body)) return false;
      return true;
    default:
      return true;
  }
}

}  // namespace

bool is_anf(const Program& p) {
  for (const auto& f : p.functions)
    if (!expr_is_anf(*f.body)) return false;
  return expr_is_anf(*p.main_expr);
}

Program load_program(const std::string& text) {
  Program p = parse_program(text);
  typecheck(p);
  normalize_anf(p);
  typecheck(p);
  return p;
}

}  // namespace layopt
