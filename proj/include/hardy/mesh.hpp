#pragma once

#include <vector>

#include "hardy/quadrature.hpp"
#include "hardy/weights.hpp"

namespace hardy {

/// Resolution of the evaluation mesh. Each segment between breakpoints is
/// mapped by x = lo + L / (1 + exp(-sinh(tau))) with tau on a uniform grid
/// of step h; nodes closer than L * 2^-depth_bits to a segment end are
/// dropped. Halving h or doubling depth_bits yields a superset of nodes.
struct MeshLevel {
  double h = 0.125;
  int depth_bits = 32;
};

/// Mesh nodes inside [lo, hi] (points of `dom`). Breakpoints strictly inside
/// become nodes; with `closed` the ends themselves are nodes as well (an
/// infinite hi is never a node).
std::vector<Abscissa> mesh_nodes(const Interval& dom, const Abscissa& lo,
                                 const Abscissa& hi,
                                 const std::vector<double>& breaks,
                                 const MeshLevel& level, bool closed);

/// Union of the breakpoints of the given weights, sorted and de-duplicated.
std::vector<double> merged_breaks(const std::vector<const Weight*>& ws);

/// Weight data tabulated on a mesh. Cell c is (x[c], x[c+1]); the head cell
/// is (lo, x[0]) and the tail cell (x[n-1], hi). Tails U, W run to hi and
/// are stored as logarithms.
struct NodeTable {
  double r = 1.0;
  std::vector<Abscissa> x;

  std::vector<double> mu, mw, mv;  // cell masses of u, w, v^{1/(1-r)}
  std::vector<double> sv;          // r == 1: ess sup of v per cell
  std::vector<double> rl, ll;      // v(x_i+), v(x_i-)
  double head_mu = 0, head_mw = 0, head_mv = 0, head_sv = 0;
  double tail_mu = 0, tail_mw = 0, tail_mv = 0, tail_sv = 0;

  std::vector<double> lU, lW;  // log of tails from x_i to hi
  std::vector<double> dU, dW;  // lU[c] - lU[c+1], computed without cancellation
  double lUa = 0, lWa = 0;     // log tails from lo (may be +inf)
  double dUa = 0, dWa = 0;     // lUa - lU[0], lWa - lW[0]
  bool has_w = false;

  int n() const { return static_cast<int>(x.size()); }
};

/// Tabulates u, v (and w when non-null) on `nodes` lying in [lo, hi].
/// Throws HypothesisViolation if W vanishes or diverges at a node.
NodeTable tabulate(const Weight& u, const Weight& v, const Weight* w, double r,
                   const Abscissa& lo, const Abscissa& hi,
                   std::vector<Abscissa> nodes, const Quadrature& quad);

}  // namespace hardy
