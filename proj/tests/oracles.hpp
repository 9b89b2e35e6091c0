// Test-only brute-force oracles, independent of the closed-form solver paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "cournot/harness.hpp"
#include "cournot/model.hpp"
#include "cournot/qp.hpp"

namespace oracles {

// Dense grid scan plus golden-section refinement around the best cell.
struct GridMin {
  double argmin;
  double value;
};

inline GridMin grid_minimize(const std::function<double(double)>& f, double lo,
                             double hi, int points = 100000) {
  if (lo == hi) return {lo, f(lo)};
  double best_t = lo, best_v = f(lo);
  for (int k = 1; k < points; ++k) {
    const double t = lo + (hi - lo) * k / double(points - 1);
    const double v = f(t);
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  }
  // golden-section inside the bracket around the best grid point
  const double step = (hi - lo) / double(points - 1);
  double a = std::max(lo, best_t - step), b = std::min(hi, best_t + step);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * (1.0 + std::abs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fmid = f(mid);
  if (fmid < best_v) return {mid, fmid};
  return {best_t, best_v};
}

inline GridMin grid_maximize(const std::function<double(double)>& f, double lo,
                             double hi, int points = 100000) {
  const GridMin m = grid_minimize([&](double t) { return -f(t); }, lo, hi, points);
  return {m.argmin, -m.value};
}

// Projected gradient on the box QP, step 1/(beta*(N+1)).
inline std::vector<double> projected_gradient_qp(const cournot::BoxQP& p,
                                                 double tol = 1e-12,
                                                 long max_iters = 500000) {
  const std::size_t N = p.c.size();
  std::vector<double> x(N);
  for (std::size_t i = 0; i < N; ++i) x[i] = 0.5 * (p.lo[i] + p.hi[i]);
  const double step = 1.0 / (p.beta * double(N + 1));
  for (long it = 0; it < max_iters; ++it) {
    double s = 0.0;
    for (double v : x) s += v;
    double change = 0.0;
    std::vector<double> nx(N);
    for (std::size_t i = 0; i < N; ++i) {
      const double g = p.beta * (x[i] + s) + p.c[i];
      nx[i] = std::clamp(x[i] - step * g, p.lo[i], p.hi[i]);
      change = std::max(change, std::abs(nx[i] - x[i]));
    }
    x.swap(nx);
    if (change <= tol) break;
  }
  return x;
}

// Dense-matrix evaluation of phi, materializing B1 and Btilde1.
inline double dense_phi(const cournot::Instance& inst,
                        const cournot::StrategyProfile& x,
                        const cournot::StrategyProfile& y) {
  const int N = inst.N;
  std::vector<std::vector<double>> B1(N, std::vector<double>(N, 0.0)), Bt = B1;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j)
        B1[i][j] = inst.beta;
      else
        Bt[i][j] = inst.beta;
    }
  auto quad = [&](const std::vector<std::vector<double>>& M,
                  const std::vector<double>& a, const std::vector<double>& b) {
    double v = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) v += a[i] * M[i][j] * b[j];
    return v;
  };
  double v = 0.0;
  // <Btilde x - a, y - x>
  for (int i = 0; i < N; ++i) {
    double row = -inst.alpha;
    for (int j = 0; j < N; ++j) row += Bt[i][j] * x[j];
    v += row * (y[i] - x[i]);
  }
  v += quad(B1, y, y) - quad(B1, x, x);
  for (int i = 0; i < N; ++i)
    v += cournot::cost_value(inst.costs[i], y[i]) -
         cournot::cost_value(inst.costs[i], x[i]);
  return v;
}

// Deterministic RNG for tests (same generator the harness documents).
using Rng = cournot::SplitMix64;

inline cournot::StrategyProfile random_feasible(const cournot::Instance& inst,
                                                Rng& rng) {
  cournot::StrategyProfile x(inst.N);
  for (int i = 0; i < inst.N; ++i)
    x[i] = rng.uniform(inst.lower[i], inst.upper[i]);
  return x;
}

// A random cost that is valid (increasing, concave) on [lo, hi].
inline cournot::CostFunction random_cost(Rng& rng, double lo, double hi,
                                         int family) {
  switch (family % 4) {
    case 0:
      return cournot::Affine{rng.uniform(0.0, 10.0), rng.uniform(-5.0, 5.0)};
    case 1: {
      const double d = rng.uniform(0.0, 2.0);
      const double nu = 2.0 * d * hi + rng.uniform(0.0, 5.0);
      return cournot::ConcaveQuadratic{nu, d};
    }
    case 2:
      return cournot::LogConcave{rng.uniform(0.0, 5.0), rng.uniform(0.1, 15.0)};
    default: {
      // concave increasing pwl: slopes drawn descending
      const int segs = 2 + static_cast<int>(rng.next() % 4);
      std::vector<double> bp(segs + 1), val(segs + 1);
      for (int k = 0; k <= segs; ++k)
        bp[k] = lo + (hi - lo) * k / double(segs);
      std::vector<double> slopes(segs);
      double s = rng.uniform(5.0, 10.0);
      for (int k = 0; k < segs; ++k) {
        slopes[k] = s;
        s = rng.uniform(0.0, s);
      }
      val[0] = rng.uniform(-2.0, 2.0);
      for (int k = 0; k < segs; ++k)
        val[k + 1] = val[k] + slopes[k] * (bp[k + 1] - bp[k]);
      return cournot::PiecewiseLinearConcave{bp, val};
    }
  }
}

}  // namespace oracles
