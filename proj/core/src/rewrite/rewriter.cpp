#include "layopt/rewrite/rewriter.hpp"

#include <algorithm>
#include <sstream>

#include "layopt/analysis/cfg.hpp"
#include "layopt/analysis/dataflow.hpp"
#include "layopt/runtime/boxed_interp.hpp"
#include "layopt/support/valuegen.hpp"

namespace layopt {

namespace {

template <typename T>
std::vector<T> permuted(const std::vector<T>& xs, const std::vector<int>& pos) {
  std::vector<T> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    out[static_cast<std::size_t>(pos[i])] = xs[i];
  return out;
}

void permute_rhs(Rhs& r, const std::map<std::string, LayoutAssignment>& ls);

void permute_arg(Arg& a, const std::map<std::string, LayoutAssignment>& ls) {
  if (a.kind == Arg::Kind::Nested) permute_rhs(*a.nested, ls);
}

void permute_rhs(Rhs& r, const std::map<std::string, LayoutAssignment>& ls) {
  for (auto& a : r.args) permute_arg(a, ls);
  if (r.kind == Rhs::Kind::ConApp) {
    auto it = ls.find(r.callee);
    if (it != ls.end()) {
      std::vector<Arg> out(r.args.size());
      for (std::size_t i = 0; i < r.args.size(); ++i)
        out[static_cast<std::size_t>(it->second.pos[i])] =
            std::move(r.args[i]);
      r.args = std::move(out);
    }
  }
}

void permute_expr(Expr& e, const std::map<std::string, LayoutAssignment>& ls) {
  switch (e.kind) {
    case Expr::Kind::Let:
      permute_rhs(e.rhs, ls);
      permute_expr(*e.body, ls);
      break;
    case Expr::Kind::Case:
      for (auto& arm : e.arms) {
        auto it = ls.find(arm.ctor);
        if (it != ls.end()) arm.binders = permuted(arm.binders, it->second.pos);
        permute_expr(*arm.body, ls);
      }
      break;
    case Expr::Kind::Var:
      break;
  }
}

}  // namespace

Program reorder_program(const Program& p,
                        const std::map<std::string, LayoutAssignment>& layouts) {
  Program out = clone(p);
  for (auto& d : out.datatypes)
    for (auto& c : d.ctors) {
      auto it = layouts.find(c.name);
      if (it == layouts.end()) continue;
      if (it->second.size() != static_cast<int>(c.fields.size()))
        throw std::invalid_argument("layout size mismatch for " + c.name);
      if (!it->second.is_permutation())
        throw std::invalid_argument("layout for " + c.name +
                                    " is not a bijection");
      c.fields = permuted(c.fields, it->second.pos);
    }
  for (auto& f : out.functions) permute_expr(*f.body, layouts);
  permute_expr(*out.main_expr, layouts);
  return out;
}

Program reorder_datatype(const Program& p, const LayoutAssignment& a) {
  std::map<std::string, LayoutAssignment> one{{a.dcon, a}};
  return reorder_program(p, one);
}

namespace {

// Position key of a let node: the smallest new position among the fields of
// `arm_ctor` its right-hand side touches; -1 when it touches none.
int motion_key(const Expr& let, const std::map<std::string, int>& binder_field,
               const std::vector<int>& pos) {
  int best = -1;
  for (const auto& a : let.rhs.args) {
    if (a.kind != Arg::Kind::Var) continue;
    auto it = binder_field.find(a.var);
    if (it == binder_field.end()) continue;
    int p = pos[static_cast<std::size_t>(it->second)];
    if (best < 0 || p < best) best = p;
  }
  return best;
}

struct MotionPass {
  const Program& p;
  const std::map<std::string, LayoutAssignment>& layouts;
  RewritePlan* plan;
  const FunDef* fn = nullptr;
  const Cfg* cfg = nullptr;
  const DataFlowInfo* dfi = nullptr;
  std::map<const Expr*, int> node_of;
  std::map<std::string, int> arm_counter;

  void run(FunDef& f) {
    fn = &f;
    Cfg g = build_cfg(f);
    DataFlowInfo d = build_dataflow(f, g);
    cfg = &g;
    dfi = &d;
    node_of.clear();
    for (const auto& n : g.nodes) node_of[n.expr] = n.id;
    arm_counter.clear();
    walk(f.body);
    cfg = nullptr;
    dfi = nullptr;
  }

  void walk(std::unique_ptr<Expr>& e) {
    switch (e->kind) {
      case Expr::Kind::Let:
        walk(e->body);
        break;
      case Expr::Kind::Case: {
        for (auto& arm : e->arms) {
          auto it = layouts.find(arm.ctor);
          if (it != layouts.end() && !arm.binders.empty()) {
            std::map<std::string, int> binder_field;
            for (std::size_t k = 0; k < arm.binders.size(); ++k)
              binder_field[arm.binders[k]] = static_cast<int>(k);
            reorder_chain(arm, binder_field, it->second.pos);
          }
          walk(arm.body);
        }
        break;
      }
      case Expr::Kind::Var:
        break;
    }
  }

  void reorder_chain(CaseArm& arm,
                     const std::map<std::string, int>& binder_field,
                     const std::vector<int>& pos) {
    // Detach the leading straight-line let chain.
    std::vector<std::unique_ptr<Expr>> chain;
    std::unique_ptr<Expr> tail = std::move(arm.body);
    while (tail->kind == Expr::Kind::Let) {
      std::unique_ptr<Expr> next = std::move(tail->body);
      chain.push_back(std::move(tail));
      tail = std::move(next);
    }
    if (chain.size() > 1) {
      std::vector<std::string> old_order;
      for (const auto& let : chain) old_order.push_back(let->var);

      std::vector<int> key(chain.size());
      for (std::size_t i = 0; i < chain.size(); ++i)
        key[i] = motion_key(*chain[i], binder_field, pos);

      // Insertion-style bubbling: a field-touching binding moves left past
      // legal swaps while a worse-keyed field-touching binding remains to
      // its left.  Bindings that touch no field only ever get hopped over,
      // so their relative order is preserved.
      auto better_left_exists = [&](std::size_t j) {
        for (std::size_t k = 0; k < j; ++k)
          if (key[k] >= 0 && key[k] > key[j]) return true;
        return false;
      };
      for (std::size_t i = 1; i < chain.size(); ++i) {
        for (std::size_t j = i; j > 0; --j) {
          if (key[j] < 0) break;
          if (!better_left_exists(j)) break;
          int a = node_of.at(chain[j - 1].get());
          int b = node_of.at(chain[j].get());
          if (!may_reorder(*dfi, a, b)) break;
          std::swap(chain[j - 1], chain[j]);
          std::swap(key[j - 1], key[j]);
        }
      }

      std::vector<std::string> new_order;
      for (const auto& let : chain) new_order.push_back(let->var);
      if (plan && new_order != old_order) {
        RewritePlan::Motion m;
        m.fn = fn->name;
        m.arm = arm.ctor + "#" + std::to_string(arm_counter[arm.ctor]++);
        m.old_order = std::move(old_order);
        m.new_order = std::move(new_order);
        plan->moved.push_back(std::move(m));
      }
    }
    // Reattach.
    std::unique_ptr<Expr> body = std::move(tail);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      (*it)->body = std::move(body);
      body = std::move(*it);
    }
    arm.body = std::move(body);
  }
};

}  // namespace

Program apply_code_motion(const Program& p,
                          const std::map<std::string, LayoutAssignment>& layouts,
                          RewritePlan* plan) {
  Program out = clone(p);
  MotionPass pass{out, layouts, plan};
  for (auto& f : out.functions) pass.run(f);
  return out;
}

namespace {

ValuePtr map_value(const ValuePtr& v,
                   const std::map<std::string, LayoutAssignment>& layouts,
                   bool inverse) {
  if (v->kind != Value::Kind::Data) return v;
  std::vector<ValuePtr> fields;
  fields.reserve(v->fields.size());
  for (const auto& f : v->fields) fields.push_back(map_value(f, layouts, inverse));
  auto it = layouts.find(v->dcon);
  if (it != layouts.end()) {
    const auto& pos = inverse ? it->second.inverse().pos : it->second.pos;
    fields = permuted(fields, pos);
  }
  return Value::of_data(v->tycon, v->dcon, v->ordinal, std::move(fields));
}

}  // namespace

ValuePtr permute_value(const ValuePtr& v,
                       const std::map<std::string, LayoutAssignment>& layouts) {
  return map_value(v, layouts, false);
}

ValuePtr unpermute_value(const ValuePtr& v,
                         const std::map<std::string, LayoutAssignment>& layouts) {
  return map_value(v, layouts, true);
}

std::string VerifyReport::summary() const {
  if (ok) return "ok: " + std::to_string(trials_run) + " trials";
  std::ostringstream os;
  os << "divergence in '" << fn << "' on input " << input << ": before="
     << before_result << " after=" << after_result;
  return os.str();
}

VerifyReport verify_rewrite(const Program& before, const Program& after,
                            const RewritePlan& plan, int trials,
                            std::uint64_t seed) {
  VerifyReport report;
  std::mt19937_64 rng(seed);
  for (const auto& f : before.functions) {
    const FunDef* g = after.find_function(f.name);
    if (!g || g->params.size() != f.params.size())
      throw std::invalid_argument("function signatures differ: " + f.name);
    for (int t = 0; t < trials; ++t) {
      std::vector<ValuePtr> args, args_after;
      for (const auto& [v, ty] : f.params) {
        ValuePtr a = random_value(before, ty, rng, 5);
        args.push_back(a);
        args_after.push_back(permute_value(a, plan.layouts));
      }
      ValuePtr rb = interp_boxed(before, f.name, args);
      ValuePtr ra = interp_boxed(after, f.name, args_after);
      ValuePtr ra_src = unpermute_value(ra, plan.layouts);
      report.trials_run++;
      if (!value_equal(rb, ra_src)) {
        report.ok = false;
        report.fn = f.name;
        std::ostringstream in;
        for (std::size_t k = 0; k < args.size(); ++k) {
          if (k) in << ", ";
          in << value_to_string(args[k]);
        }
        report.input = in.str();
        report.before_result = value_to_string(rb);
        report.after_result = value_to_string(ra_src);
        return report;
      }
    }
  }
  return report;
}

std::string plan_json(const RewritePlan& plan) {
  std::ostringstream os;
  os << "{\"layouts\": {";
  bool first = true;
  for (const auto& [dcon, a] : plan.layouts) {
    if (!first) os << ", ";
    first = false;
    os << "\"" << dcon << "\": {\"pos\": [";
    for (std::size_t i = 0; i < a.pos.size(); ++i)
      os << (i ? ", " : "") << a.pos[i];
    os << "], \"order\": [";
    auto ord = a.order();
    for (std::size_t i = 0; i < ord.size(); ++i)
      os << (i ? ", " : "") << ord[i];
    os << "]}";
  }
  os << "}, \"moved\": [";
  for (std::size_t i = 0; i < plan.moved.size(); ++i) {
    const auto& m = plan.moved[i];
    if (i) os << ",";
    os << "\n  {\"fn\": \"" << m.fn << "\", \"arm\": \"" << m.arm
       << "\", \"old\": [";
    for (std::size_t k = 0; k < m.old_order.size(); ++k)
      os << (k ? ", " : "") << "\"" << m.old_order[k] << "\"";
    os << "], \"new\": [";
    for (std::size_t k = 0; k < m.new_order.size(); ++k)
      os << (k ? ", " : "") << "\"" << m.new_order[k] << "\"";
    os << "]}";
  }
  os << "\n]}\n";
  return os.str();
}

}  // namespace layopt
