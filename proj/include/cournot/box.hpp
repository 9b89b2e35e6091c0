#pragma once

#include <vector>

#include "cournot/model.hpp"
#include "cournot/scalar.hpp"

namespace cournot {

struct Interval {
  double lo{0.0};
  double hi{0.0};
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

// An n-dimensional subbox of the concave coordinates, with the chord
// envelope of each h_j cached per edge.
struct ConcaveBox {
  std::vector<Interval> edges;
  std::vector<AffineFn> envelopes;
};

// Box spanning the full concave strategy intervals D_1 x ... x D_n.
ConcaveBox make_root_box(const Instance& inst);

// Box with the given edges; envelopes are recomputed from inst's costs.
ConcaveBox make_box(const Instance& inst, std::vector<Interval> edges);

// Whether the first n coordinates of x lie in the box (small tolerance).
bool box_contains(const ConcaveBox& box, const StrategyProfile& x);

// Product of edge widths (1 for n = 0).
double box_volume(const ConcaveBox& box);

// The N intervals of D_I: box edges for i < n, original bounds for i >= n.
std::vector<Interval> full_intervals(const Instance& inst, const ConcaveBox& box);

// max over edges of rho_edge, with the attaining edge index (-1 for n = 0).
struct BoxRho {
  double value{0.0};
  int edge{-1};
};
BoxRho box_rho(const Instance& inst, const ConcaveBox& box);

}  // namespace cournot
