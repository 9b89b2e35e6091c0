#include "cournot/gap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cournot/scalar.hpp"

namespace cournot {

namespace {

double self_terms(const Instance& inst, const StrategyProfile& x) {
  const double s = total_output(x);
  double v = inst.beta * s * s - inst.alpha * s;
  for (int i = 0; i < inst.N; ++i) v += cost_value(inst.costs[i], x[i]);
  return v;
}

GapValue gap_over(const Instance& inst, const std::vector<Interval>& dom,
                  const StrategyProfile& x) {
  const double s = total_output(x);
  GapValue g;
  g.per_firm_argmins.resize(inst.N);
  double inner = 0.0;
  for (int i = 0; i < inst.N; ++i) {
    const double c = inst.beta * (s - x[i]) - inst.alpha;
    const ScalarMin m = minimize_univariate(inst.beta, c, inst.costs[i],
                                            dom[i].lo, dom[i].hi);
    inner += m.value;
    g.per_firm_argmins[i] = m.argmin;
  }
  g.value = -inner + self_terms(inst, x);
  return g;
}

}  // namespace

GapValue gap(const Instance& inst, const StrategyProfile& x) {
  if (!is_feasible(inst, x)) throw std::invalid_argument("gap: infeasible point");
  std::vector<Interval> dom(inst.N);
  for (int i = 0; i < inst.N; ++i) dom[i] = {inst.lower[i], inst.upper[i]};
  return gap_over(inst, dom, x);
}

GapValue gap_restricted(const Instance& inst, const std::vector<Interval>& box,
                        const StrategyProfile& x) {
  if (box.size() != static_cast<std::size_t>(inst.N))
    throw std::invalid_argument("gap_restricted: expected N intervals");
  if (x.size() != box.size())
    throw std::invalid_argument("gap_restricted: point size mismatch");
  for (int i = 0; i < inst.N; ++i) {
    const double tol = 1e-9 * (1.0 + std::abs(box[i].lo) + std::abs(box[i].hi));
    if (x[i] < box[i].lo - tol || x[i] > box[i].hi + tol)
      throw std::invalid_argument("gap_restricted: point outside the subbox");
  }
  return gap_over(inst, box, x);
}

double gap_pwl(const Instance& inst, const std::vector<ConcaveBox>& partition,
               const StrategyProfile& x) {
  if (partition.empty()) throw std::invalid_argument("gap_pwl: empty partition");
  if (!is_feasible(inst, x)) throw std::invalid_argument("gap_pwl: infeasible point");

  const ConcaveBox* home = nullptr;
  for (const auto& leaf : partition)
    if (box_contains(leaf, x)) {
      home = &leaf;
      break;
    }
  if (home == nullptr)
    throw std::invalid_argument("gap_pwl: point not covered by the partition");

  // h-bar at x: chords of x's own leaf for concave firms, exact affine costs.
  const double s = total_output(x);
  double hbar_x = inst.beta * s * s - inst.alpha * s;
  for (int i = 0; i < inst.N; ++i)
    hbar_x += (i < inst.n) ? (*home).envelopes[i](std::clamp(
                                 x[i], home->edges[i].lo, home->edges[i].hi))
                           : cost_value(inst.costs[i], x[i]);

  // Per leaf the inner problem is separable with affine cost terms: each
  // coordinate is a clipped quadratic vertex.
  double best_inner = std::numeric_limits<double>::infinity();
  for (const auto& leaf : partition) {
    double inner = 0.0;
    for (int i = 0; i < inst.N; ++i) {
      double lo, hi, slope, intercept;
      if (i < inst.n) {
        lo = leaf.edges[i].lo;
        hi = leaf.edges[i].hi;
        slope = leaf.envelopes[i].slope;
        intercept = leaf.envelopes[i].intercept;
      } else {
        lo = inst.lower[i];
        hi = inst.upper[i];
        const auto& a = std::get<Affine>(inst.costs[i]);
        slope = a.mu;
        intercept = a.xi;
      }
      const double c = inst.beta * (s - x[i]) - inst.alpha + slope;
      const double y = std::clamp(-c / (2.0 * inst.beta), lo, hi);
      inner += inst.beta * y * y + c * y + intercept;
    }
    best_inner = std::min(best_inner, inner);
  }
  return -best_inner + hbar_x;
}

double deletion_bound(const Instance& inst, const ConcaveBox& box) {
  // Corner vectors of D_I: concave coordinates from the box, the rest at
  // the original bounds.
  double su = 0.0, sl = 0.0, hl = 0.0;
  std::vector<double> ui(inst.N);
  for (int i = 0; i < inst.N; ++i) {
    const double lo = (i < inst.n) ? box.edges[i].lo : inst.lower[i];
    ui[i] = (i < inst.n) ? box.edges[i].hi : inst.upper[i];
    su += ui[i];
    sl += lo;
    hl += cost_value(inst.costs[i], lo);
  }
  double inner = 0.0;
  for (int i = 0; i < inst.N; ++i) {
    const double c = inst.beta * (su - ui[i]) - inst.alpha;
    inner += minimize_univariate(inst.beta, c, inst.costs[i],
                                 inst.lower[i], inst.upper[i])
                 .value;
  }
  // For an equilibrium x in D_I, Phi(x, y) <= [the minimized sum](y)
  // - beta*(sum l)^2 + alpha*(sum u) - h(l) for every y; a positive value
  // below therefore contradicts min_y Phi(x, y) = 0.
  return -inner + inst.beta * sl * sl - inst.alpha * su + hl;
}

bool is_eps_equilibrium(const Instance& inst, const StrategyProfile& x, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("is_eps_equilibrium: eps must be >= 0");
  return gap(inst, x).value <= eps;
}

}  // namespace cournot
