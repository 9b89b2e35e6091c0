#pragma once

#include <string>
#include <variant>
#include <vector>

namespace cournot {

// h(t) = mu*t + xi
struct Affine {
  double mu{0.0};
  double xi{0.0};
};

// h(t) = nu*t - d*t^2
struct ConcaveQuadratic {
  double nu{0.0};
  double d{0.0};
};

// h(t) = a*t + ln(1 + gamma*t)
struct LogConcave {
  double a{0.0};
  double gamma{1.0};
};

// Continuous piecewise-linear interpolant through (breakpoints[k], values[k]).
// Concave and increasing when segment slopes are nonincreasing and >= 0.
struct PiecewiseLinearConcave {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

using CostFunction =
    std::variant<Affine, ConcaveQuadratic, LogConcave, PiecewiseLinearConcave>;

double cost_value(const CostFunction& h, double t);

// Derivative of h at t; for the piecewise-linear family this is the slope of
// the segment to the right of t (last segment's slope at the right endpoint).
double cost_derivative(const CostFunction& h, double t);

// Checks that h is increasing and concave on [lo, hi] and, for the
// piecewise-linear family, that the breakpoints cover [lo, hi] exactly.
// Throws std::invalid_argument on violation.
void validate_cost_on(const CostFunction& h, double lo, double hi);

std::string cost_family_name(const CostFunction& h);

}  // namespace cournot
