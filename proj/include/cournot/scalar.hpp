#pragma once

#include "cournot/cost.hpp"

namespace cournot {

struct AffineFn {
  double slope{0.0};
  double intercept{0.0};
  double operator()(double t) const { return slope * t + intercept; }
};

// Chord of h through (lo, h(lo)) and (hi, h(hi)); for a concave h this is its
// convex envelope on [lo, hi]. A degenerate interval (lo == hi) yields the
// tangent-style line with slope h'(lo) through (lo, h(lo)).
AffineFn chord(const CostFunction& h, double lo, double hi);

// h(t) - chord(t); nonnegative up to rounding for concave h.
double envelope_defect_at(const CostFunction& h, double lo, double hi, double t);

// max_{t in [lo,hi]} (h(t) - chord(t)), via the closed-form stationary point.
double rho_edge(const CostFunction& h, double lo, double hi);

struct ScalarMin {
  double argmin{0.0};
  double value{0.0};
};

// Global minimum of q(y) = beta*y^2 + c*y + h(y) on [lo, hi], by closed-form
// enumeration of the stationary points of q. Ties break to the smaller y.
ScalarMin minimize_univariate(double beta, double c, const CostFunction& h,
                              double lo, double hi);

}  // namespace cournot
