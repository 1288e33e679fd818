#include "layopt/solver/solver.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace layopt {

std::string LayoutConstraint::describe(const std::string& dcon) const {
  switch (kind) {
    case Kind::After:
      return dcon + " field " + std::to_string(field) + " AFTER field " +
             std::to_string(other);
    case Kind::RightAfter:
      return dcon + " field " + std::to_string(field) + " RIGHTAFTER field " +
             std::to_string(other);
    default:
      return dcon + " field " + std::to_string(field) + " AT " +
             std::to_string(other);
  }
}

std::vector<LayoutConstraint> constraints_for(const Program& p,
                                              const std::string& dcon) {
  std::vector<LayoutConstraint> out;
  for (const auto& n : p.notes) {
    if (n.dcon != dcon) continue;
    LayoutConstraint c;
    c.field = n.field;
    c.other = n.other;
    switch (n.kind) {
      case LayoutNote::Kind::After: c.kind = LayoutConstraint::Kind::After; break;
      case LayoutNote::Kind::RightAfter:
        c.kind = LayoutConstraint::Kind::RightAfter;
        break;
      case LayoutNote::Kind::At: c.kind = LayoutConstraint::Kind::Absolute; break;
    }
    out.push_back(c);
  }
  return out;
}

namespace {

// Cheap structural unsatisfiability checks that can name the culprits.
void precheck_constraints(const std::string& dcon, int n,
                          const std::vector<LayoutConstraint>& cs) {
  std::map<int, int> pinned;          // field -> position
  std::map<int, int> pinned_by_pos;   // position -> field
  std::map<int, int> right_after_of;  // reference field -> follower
  for (const auto& c : cs) {
    if (c.field < 0 || c.field >= n ||
        (c.kind == LayoutConstraint::Kind::Absolute
             ? (c.other < 0 || c.other >= n)
             : (c.other < 0 || c.other >= n)))
      throw ConstraintError("constraint out of range: " + c.describe(dcon));
    if (c.kind != LayoutConstraint::Kind::Absolute && c.field == c.other)
      throw ConstraintError("field ordered after itself: " + c.describe(dcon));
    if (c.kind == LayoutConstraint::Kind::Absolute) {
      auto it = pinned.find(c.field);
      if (it != pinned.end() && it->second != c.other)
        throw ConstraintError("conflicting positions for " + dcon + " field " +
                              std::to_string(c.field));
      auto jt = pinned_by_pos.find(c.other);
      if (jt != pinned_by_pos.end() && jt->second != c.field)
        throw ConstraintError("two fields pinned to position " +
                              std::to_string(c.other) + " in " + dcon +
                              ": fields " + std::to_string(jt->second) +
                              " and " + std::to_string(c.field));
      pinned[c.field] = c.other;
      pinned_by_pos[c.other] = c.field;
    }
    if (c.kind == LayoutConstraint::Kind::RightAfter) {
      auto it = right_after_of.find(c.other);
      if (it != right_after_of.end() && it->second != c.field)
        throw ConstraintError(
            "two fields placed right after field " + std::to_string(c.other) +
            " in " + dcon + ": fields " + std::to_string(it->second) + " and " +
            std::to_string(c.field));
      right_after_of[c.other] = c.field;
    }
  }
  // Cycle in the after-relation.
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
  for (const auto& c : cs)
    if (c.kind != LayoutConstraint::Kind::Absolute)
      succ[static_cast<std::size_t>(c.other)].push_back(c.field);
  std::vector<int> state(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  auto dfs = [&](auto&& self, int v) -> std::optional<std::pair<int, int>> {
    state[static_cast<std::size_t>(v)] = 1;
    stack.push_back(v);
    for (int w : succ[static_cast<std::size_t>(v)]) {
      if (state[static_cast<std::size_t>(w)] == 1) return std::make_pair(v, w);
      if (state[static_cast<std::size_t>(w)] == 0)
        if (auto r = self(self, w)) return r;
    }
    stack.pop_back();
    state[static_cast<std::size_t>(v)] = 2;
    return std::nullopt;
  };
  for (int v = 0; v < n; ++v)
    if (state[static_cast<std::size_t>(v)] == 0)
      if (auto cyc = dfs(dfs, v))
        throw ConstraintError("cyclic ordering between " + dcon + " fields " +
                              std::to_string(cyc->first) + " and " +
                              std::to_string(cyc->second));
}

bool satisfies(const std::vector<int>& pos,
               const std::vector<LayoutConstraint>& cs) {
  for (const auto& c : cs) {
    int pf = pos[static_cast<std::size_t>(c.field)];
    switch (c.kind) {
      case LayoutConstraint::Kind::After:
        if (pf <= pos[static_cast<std::size_t>(c.other)]) return false;
        break;
      case LayoutConstraint::Kind::RightAfter:
        if (pf != pos[static_cast<std::size_t>(c.other)] + 1) return false;
        break;
      case LayoutConstraint::Kind::Absolute:
        if (pf != c.other) return false;
        break;
    }
  }
  return true;
}

// Candidate comparator: objective, then (when seeded) the seed graph's
// objective, then lexicographic position array.
struct Best {
  bool has = false;
  Rational cost;
  Rational seed_cost;
  std::vector<int> pos;
};

struct Search {
  const FieldAccessGraph& g;
  const FieldAttrTable& attrs;
  const CostParams& params;
  const std::vector<LayoutConstraint>& constraints;
  const FieldAccessGraph* seed;
  int n;
  Best best;

  Rational seed_cost_of(const LayoutAssignment& a) {
    if (!seed) return Rational(0);
    return layout_cost(a, *seed, attrs, params);
  }

  void offer(const std::vector<int>& pos) {
    if (!satisfies(pos, constraints)) return;
    LayoutAssignment a;
    a.dcon = g.dcon;
    a.pos = pos;
    Rational c = layout_cost(a, g, attrs, params);
    if (!best.has || c < best.cost) {
      best = Best{true, c, seed_cost_of(a), pos};
      return;
    }
    if (c == best.cost && seed) {
      Rational sc = seed_cost_of(a);
      if (sc < best.seed_cost) best = Best{true, c, sc, pos};
      // equal seed cost: keep the earlier (lexicographically smaller) one
    }
  }

  void exhaustive() {
    std::vector<int> pos(static_cast<std::size_t>(n));
    std::iota(pos.begin(), pos.end(), 0);
    do {
      offer(pos);
    } while (std::next_permutation(pos.begin(), pos.end()));
  }

  // Assign positions to fields in index order; admissible bound adds each
  // unplaced edge's cheapest regime value.
  void bnb(std::vector<int>& pos, std::vector<bool>& used, std::size_t i,
           Rational partial) {
    if (i == pos.size()) {
      offer(pos);
      return;
    }
    for (int cand = 0; cand < n; ++cand) {
      if (used[static_cast<std::size_t>(cand)]) continue;
      pos[i] = cand;
      if (!partial_feasible(pos, i)) continue;
      Rational cost = partial + placed_cost(pos, i);
      Rational bound = cost + remaining_bound(i);
      if (best.has) {
        // Without a tie seed the first minimum found is already the
        // lexicographically smallest, so equal-bound subtrees can go; with a
        // seed, equal-cost optima still compete on the seed objective.
        if (seed ? bound > best.cost : bound >= best.cost) continue;
      }
      used[static_cast<std::size_t>(cand)] = true;
      bnb(pos, used, i + 1, cost);
      used[static_cast<std::size_t>(cand)] = false;
    }
    pos[i] = -1;
  }

  bool partial_feasible(const std::vector<int>& pos, std::size_t i) {
    int f = static_cast<int>(i);
    for (const auto& c : constraints) {
      int pf = c.field <= f ? pos[static_cast<std::size_t>(c.field)] : -1;
      int po = c.other <= f && c.kind != LayoutConstraint::Kind::Absolute
                   ? pos[static_cast<std::size_t>(c.other)]
                   : -1;
      switch (c.kind) {
        case LayoutConstraint::Kind::Absolute:
          if (pf >= 0 && pf != c.other) return false;
          break;
        case LayoutConstraint::Kind::After:
          if (pf >= 0 && po >= 0 && pf <= po) return false;
          break;
        case LayoutConstraint::Kind::RightAfter:
          if (pf >= 0 && po >= 0 && pf != po + 1) return false;
          break;
      }
    }
    return true;
  }

  // Cost of edges whose second endpoint just became placed.
  Rational placed_cost(const std::vector<int>& pos, std::size_t i) {
    Rational sum(0);
    int f = static_cast<int>(i);
    for (const auto& e : g.edges) {
      if (e.src != f && e.dst != f) continue;
      int o = e.src == f ? e.dst : e.src;
      if (o > f) continue;  // other endpoint not placed yet
      int delta = pos[static_cast<std::size_t>(e.dst)] -
                  pos[static_cast<std::size_t>(e.src)];
      sum += edge_cost(delta, e, attrs.get(g.dcon, e.src),
                       attrs.get(g.dcon, e.dst), params) *
             e.weight;
    }
    return sum;
  }

  Rational remaining_bound(std::size_t i) {
    Rational sum(0);
    int f = static_cast<int>(i);
    for (const auto& e : g.edges) {
      if (e.src <= f && e.dst <= f) continue;
      const RegimeCosts& r = edge_regime(e, attrs.get(g.dcon, e.src),
                                         attrs.get(g.dcon, e.dst), params);
      Rational m = std::min(std::min(r.succ, r.after),
                            std::min(r.pred, r.before));
      sum += m * e.weight;
    }
    return sum;
  }
};

}  // namespace

LayoutAssignment solve_exact(const FieldAccessGraph& g,
                             const FieldAttrTable& attrs,
                             const CostParams& params,
                             const std::vector<LayoutConstraint>& constraints,
                             const FieldAccessGraph* tie_seed) {
  params.validate();
  int n = g.field_count;
  if (n > 64) throw std::invalid_argument("more than 64 fields");
  precheck_constraints(g.dcon, n, constraints);
  if (n == 0) {
    LayoutAssignment a;
    a.dcon = g.dcon;
    return a;
  }
  Search s{g, attrs, params, constraints, tie_seed, n, {}};
  if (n <= 8) {
    s.exhaustive();
  } else {
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    s.bnb(pos, used, 0, Rational(0));
  }
  if (!s.best.has)
    throw ConstraintError("no layout satisfies the constraints on " + g.dcon);
  LayoutAssignment a;
  a.dcon = g.dcon;
  a.pos = s.best.pos;
  return a;
}

LayoutAssignment solve_greedy(const FieldAccessGraph& g) {
  int n = g.field_count;
  std::vector<bool> has_incoming(static_cast<std::size_t>(n), false);
  for (const auto& e : g.edges)
    has_incoming[static_cast<std::size_t>(e.dst)] = true;
  int root = -1;
  for (int k = 0; k < n; ++k)
    if (!has_incoming[static_cast<std::size_t>(k)]) {
      root = k;
      break;
    }
  if (root < 0) root = 0;  // every field has an incoming edge: fall back

  std::vector<int> order;
  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  if (n > 0) {
    int cur = root;
    visited[static_cast<std::size_t>(cur)] = true;
    order.push_back(cur);
    for (;;) {
      int next = -1;
      Rational w(0);
      for (const auto& e : g.edges) {
        if (e.src != cur || visited[static_cast<std::size_t>(e.dst)]) continue;
        if (next < 0 || e.weight > w || (e.weight == w && e.dst < next)) {
          next = e.dst;
          w = e.weight;
        }
      }
      if (next < 0) break;
      visited[static_cast<std::size_t>(next)] = true;
      order.push_back(next);
      cur = next;
    }
    for (int k = 0; k < n; ++k)
      if (!visited[static_cast<std::size_t>(k)]) order.push_back(k);
  }
  LayoutAssignment a;
  a.dcon = g.dcon;
  a.pos.assign(static_cast<std::size_t>(n), 0);
  for (int p = 0; p < n; ++p)
    a.pos[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = p;
  return a;
}

LayoutAssignment solve_merged(
    const std::vector<std::pair<FieldAccessGraph, Rational>>& parts,
    const FieldAttrTable& attrs, const CostParams& params,
    const std::vector<LayoutConstraint>& constraints, SolveMode mode) {
  FieldAccessGraph merged = merge_graphs(parts);
  if (mode == SolveMode::Greedy) return solve_greedy(merged);
  const FieldAccessGraph* seed =
      parts.size() > 1 ? &parts.front().first : nullptr;
  return solve_exact(merged, attrs, params, constraints, seed);
}

}  // namespace layopt
