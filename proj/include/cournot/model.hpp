#pragma once

#include <string>
#include <vector>

#include "cournot/cost.hpp"

namespace cournot {

// A production plan for all N firms.
using StrategyProfile = std::vector<double>;

// Nash-Cournot oligopoly with inverse demand alpha - beta * (total output)
// and separable per-firm costs. The first n firms have concave (not
// necessarily affine) costs; firms n..N-1 must have affine costs.
struct Instance {
  int N{0};
  int n{0};
  double alpha{0.0};
  double beta{0.0};
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<CostFunction> costs;

  void validate() const;  // throws std::invalid_argument
};

double total_output(const StrategyProfile& x);

bool is_feasible(const Instance& inst, const StrategyProfile& x);

// alpha * sum(upper): the magnitude used to scale tolerances.
double problem_scale(const Instance& inst);

// Profit of firm i (0-based): (alpha - beta * sum x) * x_i - h_i(x_i).
double profit(const Instance& inst, const StrategyProfile& x, int i);

// Equilibrium bifunction, matrix-free:
//   phi(x,y) = <Btilde x - a, y - x> + y'B1 y - x'B1 x + h(y) - h(x).
double phi(const Instance& inst, const StrategyProfile& x, const StrategyProfile& y);

struct FirmExistence {
  bool ok{true};
  double hessian_inf{0.0};  // inf of h_i'' over [l_i, u_i]
  double threshold{0.0};    // -2*beta
  bool kink{false};         // piecewise-linear cost: condition holds a.e. only
};

struct ExistenceReport {
  bool ok{true};
  std::vector<FirmExistence> firms;
};

// Sufficient condition for existence of an equilibrium: for every firm,
// inf h_i'' >= -2*beta on its interval. Closed form per cost family.
ExistenceReport existence_check(const Instance& inst);

// JSON (bit-exact round trip)
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

}  // namespace cournot
