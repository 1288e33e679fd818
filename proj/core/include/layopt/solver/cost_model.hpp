#pragma once

#include <string>
#include <vector>

#include "layopt/analysis/access_graph.hpp"
#include "layopt/analysis/attributes.hpp"
#include "layopt/rational.hpp"

namespace layopt {

// Piecewise edge costs keyed by the signed position distance between the
// edge's endpoints.
struct RegimeCosts {
  Rational succ;    // dst immediately after src
  Rational after;   // dst farther ahead
  Rational pred;    // dst immediately before src
  Rational before;  // dst farther back
};

struct CostParams {
  RegimeCosts df;   // rigid orders:       succ < after < pred < before
  RegimeCosts inl;  // inlineable-first:   pred < before < succ < after

  static CostParams defaults();
  // Throws std::invalid_argument when either ordering chain is violated.
  void validate() const;
};

// Bijection from original field indices to buffer positions.
struct LayoutAssignment {
  std::string dcon;
  std::vector<int> pos;  // pos[original index] = position

  static LayoutAssignment identity(std::string dcon, int n);
  int size() const { return static_cast<int>(pos.size()); }
  bool is_identity() const;
  bool is_permutation() const;
  // order[position] = original index
  std::vector<int> order() const;
  LayoutAssignment inverse() const;
};

// Regime choice: DataFlow edges and ControlFlow edges out of an inlineable
// source use the rigid regime; a ControlFlow edge into an inlineable
// destination (from a non-inlineable source) uses the inlineable regime;
// everything else is rigid.
const RegimeCosts& edge_regime(const AccessEdge& e, unsigned src_attrs,
                               unsigned dst_attrs, const CostParams& params);

// delta = pos[dst] - pos[src]; zero is a contract violation.
Rational edge_cost(int delta, const AccessEdge& e, unsigned src_attrs,
                   unsigned dst_attrs, const CostParams& params);

Rational layout_cost(const LayoutAssignment& a, const FieldAccessGraph& g,
                     const FieldAttrTable& attrs, const CostParams& params);

}  // namespace layopt
