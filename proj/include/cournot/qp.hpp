#pragma once

#include <vector>

#include "cournot/box.hpp"
#include "cournot/model.hpp"

namespace cournot {

// min over the box of (beta/2) * (sum x_i^2 + (sum x_i)^2) + c'x,
// i.e. x'Qx + c'x with Q = B1 + Btilde1/2. Strongly convex for beta > 0.
struct BoxQP {
  double beta{0.0};
  std::vector<double> c;
  std::vector<double> lo;
  std::vector<double> hi;
};

struct QpOptions {
  double residual_tol{1e-12};  // scaled by max(1, sum hi)
  int max_bisections{200};
};

double qp_objective(const BoxQP& p, const std::vector<double>& x);

// inf-norm of x - clip(x - grad f(x), lo, hi); zero at the KKT point.
double qp_kkt_residual(const BoxQP& p, const std::vector<double>& x);

// Unique minimizer via the scalar fixed point in s = sum x: each coordinate
// is x_i(s) = clip(-c_i/beta - s, lo_i, hi_i) and the residual
// r(s) = s - sum_i x_i(s) is strictly increasing, so plain bisection finds
// the root.
std::vector<double> solve_box_qp(const BoxQP& p, const QpOptions& opt = {});

// The program (QD_I) for a subbox: c_i is the envelope slope minus alpha for
// concave firms, the affine cost slope minus alpha for the rest.
BoxQP qp_for_box(const Instance& inst, const ConcaveBox& box);

}  // namespace cournot
