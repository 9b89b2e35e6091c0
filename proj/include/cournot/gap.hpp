#pragma once

#include <vector>

#include "cournot/box.hpp"
#include "cournot/model.hpp"

namespace cournot {

struct GapValue {
  double value{0.0};
  std::vector<double> per_firm_argmins;  // the y_i* of each 1-D subproblem
};

// g(x) = -min_{y in D} Phi(x, y), evaluated by N separable 1-D minimizations.
// Nonnegative up to rounding; zero exactly at equilibria.
GapValue gap(const Instance& inst, const StrategyProfile& x);

// Same, with each inner minimization restricted to the given N intervals.
GapValue gap_restricted(const Instance& inst, const std::vector<Interval>& box,
                        const StrategyProfile& x);

// Gap of the piecewise-linear envelope model over an adaptive partition:
// the max over leaves L of -min_{y in D_L} of the bifunction with each
// concave cost replaced by its chord on L's edge.
double gap_pwl(const Instance& inst, const std::vector<ConcaveBox>& partition,
               const StrategyProfile& x);

// Lower bound on g over D_I; a positive value certifies that the subbox
// contains no equilibrium. The inner minimization runs over the full
// strategy box D (see README notes on the deletion criterion).
double deletion_bound(const Instance& inst, const ConcaveBox& box);

bool is_eps_equilibrium(const Instance& inst, const StrategyProfile& x, double eps);

}  // namespace cournot
