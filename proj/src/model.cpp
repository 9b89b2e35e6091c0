#include "cournot/model.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cournot {

void Instance::validate() const {
  if (N < 1) throw std::invalid_argument("instance: N must be >= 1");
  if (n < 0 || n > N) throw std::invalid_argument("instance: need 0 <= n <= N");
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("instance: alpha and beta must be > 0");
  const auto sz = static_cast<std::size_t>(N);
  if (lower.size() != sz || upper.size() != sz || costs.size() != sz)
    throw std::invalid_argument("instance: vector sizes must equal N");
  for (int i = 0; i < N; ++i) {
    if (!(lower[i] >= 0.0) || !(lower[i] <= upper[i]))
      throw std::invalid_argument("instance: need 0 <= lower_i <= upper_i");
    validate_cost_on(costs[i], lower[i], upper[i]);
    if (i >= n && !std::holds_alternative<Affine>(costs[i]))
      throw std::invalid_argument("instance: firms past the first n must have affine cost");
  }
}

double total_output(const StrategyProfile& x) {
  return std::accumulate(x.begin(), x.end(), 0.0);
}

bool is_feasible(const Instance& inst, const StrategyProfile& x) {
  if (x.size() != static_cast<std::size_t>(inst.N)) return false;
  for (int i = 0; i < inst.N; ++i) {
    const double tol = 1e-9 * (1.0 + std::abs(inst.upper[i]));
    if (x[i] < inst.lower[i] - tol || x[i] > inst.upper[i] + tol) return false;
    if (!std::isfinite(x[i])) return false;
  }
  return true;
}

double problem_scale(const Instance& inst) {
  return inst.alpha * std::accumulate(inst.upper.begin(), inst.upper.end(), 0.0);
}

double profit(const Instance& inst, const StrategyProfile& x, int i) {
  if (i < 0 || i >= inst.N) throw std::out_of_range("profit: firm index");
  if (!is_feasible(inst, x)) throw std::invalid_argument("profit: infeasible point");
  const double s = total_output(x);
  return (inst.alpha - inst.beta * s) * x[i] - cost_value(inst.costs[i], x[i]);
}

double phi(const Instance& inst, const StrategyProfile& x, const StrategyProfile& y) {
  if (!is_feasible(inst, x) || !is_feasible(inst, y))
    throw std::invalid_argument("phi: infeasible point");
  const double sx = total_output(x);
  double v = 0.0;
  for (int i = 0; i < inst.N; ++i) {
    // (Btilde x - a)_i = beta * (sx - x_i) - alpha
    v += (inst.beta * (sx - x[i]) - inst.alpha) * (y[i] - x[i]);
    v += inst.beta * (y[i] * y[i] - x[i] * x[i]);
    v += cost_value(inst.costs[i], y[i]) - cost_value(inst.costs[i], x[i]);
  }
  return v;
}

ExistenceReport existence_check(const Instance& inst) {
  ExistenceReport rep;
  rep.firms.reserve(inst.N);
  const double threshold = -2.0 * inst.beta;
  for (int i = 0; i < inst.N; ++i) {
    FirmExistence fe;
    fe.threshold = threshold;
    std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Affine>) {
            fe.hessian_inf = 0.0;
          } else if constexpr (std::is_same_v<T, ConcaveQuadratic>) {
            fe.hessian_inf = -2.0 * f.d;
          } else if constexpr (std::is_same_v<T, LogConcave>) {
            const double den = 1.0 + f.gamma * inst.lower[i];
            fe.hessian_inf = -(f.gamma * f.gamma) / (den * den);
          } else {
            fe.hessian_inf = 0.0;  // zero a.e.; kinks are flagged, not failed
            fe.kink = true;
          }
        },
        inst.costs[i]);
    fe.ok = fe.hessian_inf >= threshold;
    rep.ok = rep.ok && fe.ok;
    rep.firms.push_back(fe);
  }
  return rep;
}

namespace {

nlohmann::json cost_to_json(const CostFunction& h) {
  nlohmann::json j;
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Affine>) {
          j = {{"type", "affine"}, {"mu", f.mu}, {"xi", f.xi}};
        } else if constexpr (std::is_same_v<T, ConcaveQuadratic>) {
          j = {{"type", "cquad"}, {"nu", f.nu}, {"d", f.d}};
        } else if constexpr (std::is_same_v<T, LogConcave>) {
          j = {{"type", "log"}, {"a", f.a}, {"gamma", f.gamma}};
        } else {
          j = {{"type", "pwl"},
               {"breakpoints", f.breakpoints},
               {"values", f.values}};
        }
      },
      h);
  return j;
}

CostFunction cost_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "affine")
    return Affine{j.at("mu").get<double>(), j.at("xi").get<double>()};
  if (type == "cquad")
    return ConcaveQuadratic{j.at("nu").get<double>(), j.at("d").get<double>()};
  if (type == "log")
    return LogConcave{j.at("a").get<double>(), j.at("gamma").get<double>()};
  if (type == "pwl")
    return PiecewiseLinearConcave{j.at("breakpoints").get<std::vector<double>>(),
                                  j.at("values").get<std::vector<double>>()};
  throw std::invalid_argument("unknown cost type: " + type);
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["N"] = inst.N;
  j["n"] = inst.n;
  j["alpha"] = inst.alpha;
  j["beta"] = inst.beta;
  auto& bounds = j["bounds"] = nlohmann::json::array();
  for (int i = 0; i < inst.N; ++i)
    bounds.push_back({inst.lower[i], inst.upper[i]});
  auto& costs = j["costs"] = nlohmann::json::array();
  for (const auto& c : inst.costs) costs.push_back(cost_to_json(c));
  return j.dump(2);
}

Instance instance_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Instance inst;
  inst.N = j.at("N").get<int>();
  inst.n = j.at("n").get<int>();
  inst.alpha = j.at("alpha").get<double>();
  inst.beta = j.at("beta").get<double>();
  for (const auto& b : j.at("bounds")) {
    inst.lower.push_back(b.at(0).get<double>());
    inst.upper.push_back(b.at(1).get<double>());
  }
  for (const auto& c : j.at("costs")) inst.costs.push_back(cost_from_json(c));
  inst.validate();
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return instance_from_json(ss.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << instance_to_json(inst) << '\n';
}

}  // namespace cournot
