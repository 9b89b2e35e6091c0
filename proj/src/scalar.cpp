#include "cournot/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cournot {

namespace {

void check_interval(double lo, double hi) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("scalar: bad interval");
}

// Real roots of A y^2 + B y + C = 0, stable form.
int quadratic_roots(double A, double B, double C, double out[2]) {
  if (A == 0.0) {
    if (B == 0.0) return 0;
    out[0] = -C / B;
    return 1;
  }
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return 0;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
  out[0] = q / A;
  out[1] = (q != 0.0) ? C / q : -B / A - out[0];
  return 2;
}

}  // namespace

AffineFn chord(const CostFunction& h, double lo, double hi) {
  check_interval(lo, hi);
  if (lo == hi) {
    const double s = cost_derivative(h, lo);
    return {s, cost_value(h, lo) - s * lo};
  }
  const double ylo = cost_value(h, lo);
  const double yhi = cost_value(h, hi);
  const double s = (yhi - ylo) / (hi - lo);
  return {s, ylo - s * lo};
}

double envelope_defect_at(const CostFunction& h, double lo, double hi, double t) {
  check_interval(lo, hi);
  const double slack = 1e-9 * (1.0 + std::abs(lo) + std::abs(hi));
  if (t < lo - slack || t > hi + slack)
    throw std::invalid_argument("envelope_defect_at: t outside [lo, hi]");
  t = std::clamp(t, lo, hi);
  return cost_value(h, t) - chord(h, lo, hi)(t);
}

double rho_edge(const CostFunction& h, double lo, double hi) {
  check_interval(lo, hi);
  if (lo == hi) return 0.0;
  const AffineFn env = chord(h, lo, hi);
  const double m = env.slope;

  double best = 0.0;  // endpoints interpolate, defect 0 there
  auto consider = [&](double t) {
    t = std::clamp(t, lo, hi);
    best = std::max(best, cost_value(h, t) - env(t));
  };

  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Affine>) {
          // defect identically zero
        } else if constexpr (std::is_same_v<T, ConcaveQuadratic>) {
          if (f.d > 0.0) consider((f.nu - m) / (2.0 * f.d));
        } else if constexpr (std::is_same_v<T, LogConcave>) {
          // h'(t) = a + gamma/(1+gamma t) = m
          if (m > f.a) consider((f.gamma / (m - f.a) - 1.0) / f.gamma);
        } else {
          for (double b : f.breakpoints)
            if (b >= lo && b <= hi) consider(b);
        }
      },
      h);
  return best;
}

ScalarMin minimize_univariate(double beta, double c, const CostFunction& h,
                              double lo, double hi) {
  if (!(beta > 0.0)) throw std::invalid_argument("minimize_univariate: beta must be > 0");
  check_interval(lo, hi);

  auto q = [&](double y) { return beta * y * y + c * y + cost_value(h, y); };
  if (lo == hi) return {lo, q(lo)};

  std::vector<double> cand{lo, hi};
  auto push = [&](double y) {
    if (y > lo && y < hi && std::isfinite(y)) cand.push_back(y);
  };

  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Affine>) {
          push(-(c + f.mu) / (2.0 * beta));
        } else if constexpr (std::is_same_v<T, ConcaveQuadratic>) {
          // q(y) = (beta - d) y^2 + (c + nu) y; affine when beta == d,
          // then the endpoints already cover it.
          if (beta != f.d) push(-(c + f.nu) / (2.0 * (beta - f.d)));
        } else if constexpr (std::is_same_v<T, LogConcave>) {
          // q'(y) = 2 beta y + (c+a) + gamma/(1+gamma y) = 0, times (1+gamma y):
          double r[2];
          const int nr = quadratic_roots(2.0 * beta * f.gamma,
                                         2.0 * beta + (c + f.a) * f.gamma,
                                         c + f.a + f.gamma, r);
          for (int i = 0; i < nr; ++i)
            if (1.0 + f.gamma * r[i] > 0.0) push(r[i]);
        } else {
          for (double b : f.breakpoints) push(b);
          for (std::size_t k = 0; k + 1 < f.breakpoints.size(); ++k) {
            const double s0 = f.breakpoints[k], s1 = f.breakpoints[k + 1];
            const double slope = (f.values[k + 1] - f.values[k]) / (s1 - s0);
            const double v = -(c + slope) / (2.0 * beta);
            if (v > s0 && v < s1) push(v);
          }
        }
      },
      h);

  std::sort(cand.begin(), cand.end());
  ScalarMin best{cand.front(), q(cand.front())};
  for (std::size_t i = 1; i < cand.size(); ++i) {
    const double v = q(cand[i]);
    if (v < best.value) best = {cand[i], v};
  }
  return best;
}

}  // namespace cournot
