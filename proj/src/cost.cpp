#include "cournot/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cournot {

namespace {

// Index of the segment [b_k, b_{k+1}] containing t, clamped to the ends.
std::size_t segment_index(const PiecewiseLinearConcave& h, double t) {
  const auto& b = h.breakpoints;
  if (t <= b.front()) return 0;
  if (t >= b.back()) return b.size() - 2;
  auto it = std::upper_bound(b.begin(), b.end(), t);
  return static_cast<std::size_t>(it - b.begin()) - 1;
}

double segment_slope(const PiecewiseLinearConcave& h, std::size_t k) {
  const double dt = h.breakpoints[k + 1] - h.breakpoints[k];
  if (dt <= 0.0) throw std::invalid_argument("pwl cost: breakpoints not strictly ascending");
  return (h.values[k + 1] - h.values[k]) / dt;
}

}  // namespace

double cost_value(const CostFunction& h, double t) {
  return std::visit(
      [t](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Affine>) {
          return f.mu * t + f.xi;
        } else if constexpr (std::is_same_v<T, ConcaveQuadratic>) {
          return f.nu * t - f.d * t * t;
        } else if constexpr (std::is_same_v<T, LogConcave>) {
          return f.a * t + std::log1p(f.gamma * t);
        } else {
          const std::size_t k = segment_index(f, t);
          return f.values[k] + segment_slope(f, k) * (t - f.breakpoints[k]);
        }
      },
      h);
}

double cost_derivative(const CostFunction& h, double t) {
  return std::visit(
      [t](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Affine>) {
          return f.mu;
        } else if constexpr (std::is_same_v<T, ConcaveQuadratic>) {
          return f.nu - 2.0 * f.d * t;
        } else if constexpr (std::is_same_v<T, LogConcave>) {
          return f.a + f.gamma / (1.0 + f.gamma * t);
        } else {
          return segment_slope(f, segment_index(f, t));
        }
      },
      h);
}

void validate_cost_on(const CostFunction& h, double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("cost domain: lo > hi");
  std::visit(
      [lo, hi](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Affine>) {
          if (!(f.mu >= 0.0) || !std::isfinite(f.mu) || !std::isfinite(f.xi))
            throw std::invalid_argument("affine cost: slope must be finite and >= 0");
        } else if constexpr (std::is_same_v<T, ConcaveQuadratic>) {
          if (!(f.nu >= 0.0) || !(f.d >= 0.0))
            throw std::invalid_argument("cquad cost: nu and d must be >= 0");
          // increasing on [lo, hi]: h'(hi) = nu - 2 d hi >= 0
          if (f.nu - 2.0 * f.d * hi < 0.0)
            throw std::invalid_argument("cquad cost: not increasing on the interval");
        } else if constexpr (std::is_same_v<T, LogConcave>) {
          if (!(f.a >= 0.0) || !(f.gamma > 0.0))
            throw std::invalid_argument("log cost: need a >= 0 and gamma > 0");
          if (1.0 + f.gamma * lo <= 0.0)
            throw std::invalid_argument("log cost: domain outside 1 + gamma*t > 0");
        } else {
          const auto& b = f.breakpoints;
          const auto& v = f.values;
          if (b.size() < 2 || b.size() != v.size())
            throw std::invalid_argument("pwl cost: need >= 2 matching breakpoints/values");
          const double span = std::max({1.0, std::abs(lo), std::abs(hi)});
          if (std::abs(b.front() - lo) > 1e-10 * span || std::abs(b.back() - hi) > 1e-10 * span)
            throw std::invalid_argument("pwl cost: breakpoints must cover [lo, hi] exactly");
          double prev_slope = std::numeric_limits<double>::infinity();
          for (std::size_t k = 0; k + 1 < b.size(); ++k) {
            if (!(b[k] < b[k + 1]))
              throw std::invalid_argument("pwl cost: breakpoints not strictly ascending");
            const double s = segment_slope(f, k);
            if (s < 0.0) throw std::invalid_argument("pwl cost: not increasing");
            if (s > prev_slope + 1e-12 * (1.0 + std::abs(prev_slope)))
              throw std::invalid_argument("pwl cost: not concave (slopes increase)");
            prev_slope = s;
          }
        }
      },
      h);
}

std::string cost_family_name(const CostFunction& h) {
  switch (h.index()) {
    case 0: return "affine";
    case 1: return "cquad";
    case 2: return "log";
    default: return "pwl";
  }
}

}  // namespace cournot
