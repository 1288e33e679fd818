#include "layopt/solver/cost_model.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace layopt {

CostParams CostParams::defaults() {
  CostParams p;
  p.df = RegimeCosts{Rational(1), Rational(2), Rational(4), Rational(8)};
  p.inl = RegimeCosts{Rational(4), Rational(8), Rational(1), Rational(2)};
  return p;
}

void CostParams::validate() const {
  auto nonneg = [](const RegimeCosts& r) {
    return r.succ >= Rational(0) && r.after >= Rational(0) &&
           r.pred >= Rational(0) && r.before >= Rational(0);
  };
  if (!nonneg(df) || !nonneg(inl))
    throw std::invalid_argument("cost constants must be nonnegative");
  if (!(df.succ < df.after && df.after < df.pred && df.pred < df.before))
    throw std::invalid_argument(
        "rigid regime must satisfy succ < after < pred < before");
  if (!(inl.pred < inl.before && inl.before < inl.succ &&
        inl.succ < inl.after))
    throw std::invalid_argument(
        "inlineable regime must satisfy pred < before < succ < after");
}

LayoutAssignment LayoutAssignment::identity(std::string dcon, int n) {
  LayoutAssignment a;
  a.dcon = std::move(dcon);
  a.pos.resize(static_cast<std::size_t>(n));
  std::iota(a.pos.begin(), a.pos.end(), 0);
  return a;
}

bool LayoutAssignment::is_identity() const {
  for (std::size_t i = 0; i < pos.size(); ++i)
    if (pos[i] != static_cast<int>(i)) return false;
  return true;
}

bool LayoutAssignment::is_permutation() const {
  std::set<int> seen;
  for (int p : pos) {
    if (p < 0 || p >= size()) return false;
    if (!seen.insert(p).second) return false;
  }
  return true;
}

std::vector<int> LayoutAssignment::order() const {
  std::vector<int> out(pos.size(), -1);
  for (std::size_t i = 0; i < pos.size(); ++i)
    out[static_cast<std::size_t>(pos[i])] = static_cast<int>(i);
  return out;
}

LayoutAssignment LayoutAssignment::inverse() const {
  LayoutAssignment a;
  a.dcon = dcon;
  a.pos = order();
  return a;
}

const RegimeCosts& edge_regime(const AccessEdge& e, unsigned src_attrs,
                               unsigned dst_attrs, const CostParams& params) {
  if (e.kind == EdgeKind::DataFlow) return params.df;
  bool src_inl = (src_attrs & kAttrInlineable) != 0;
  bool dst_inl = (dst_attrs & kAttrInlineable) != 0;
  if (src_inl) return params.df;
  if (dst_inl) return params.inl;
  return params.df;
}

Rational edge_cost(int delta, const AccessEdge& e, unsigned src_attrs,
                   unsigned dst_attrs, const CostParams& params) {
  if (delta == 0)
    throw std::invalid_argument("edge_cost: zero distance (positions collide)");
  const RegimeCosts& r = edge_regime(e, src_attrs, dst_attrs, params);
  if (delta == 1) return r.succ;
  if (delta > 1) return r.after;
  if (delta == -1) return r.pred;
  return r.before;
}

Rational layout_cost(const LayoutAssignment& a, const FieldAccessGraph& g,
                     const FieldAttrTable& attrs, const CostParams& params) {
  if (!a.is_permutation())
    throw std::invalid_argument("layout_cost: assignment is not a bijection");
  if (a.size() != g.field_count)
    throw std::invalid_argument("layout_cost: field count mismatch");
  Rational total(0);
  for (const auto& e : g.edges) {
    int delta = a.pos[static_cast<std::size_t>(e.dst)] -
                a.pos[static_cast<std::size_t>(e.src)];
    total += edge_cost(delta, e, attrs.get(g.dcon, e.src),
                       attrs.get(g.dcon, e.dst), params) *
             e.weight;
  }
  return total;
}

}  // namespace layopt
