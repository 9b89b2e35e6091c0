#include "cournot/qp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cournot {

namespace {

void check_problem(const BoxQP& p) {
  if (!(p.beta > 0.0) || !std::isfinite(p.beta))
    throw std::invalid_argument("box qp: beta must be finite and > 0");
  const std::size_t N = p.c.size();
  if (p.lo.size() != N || p.hi.size() != N || N == 0)
    throw std::invalid_argument("box qp: inconsistent sizes");
  for (std::size_t i = 0; i < N; ++i) {
    if (!std::isfinite(p.c[i]) || !std::isfinite(p.lo[i]) || !std::isfinite(p.hi[i]))
      throw std::invalid_argument("box qp: non-finite input");
    if (!(p.lo[i] <= p.hi[i]))
      throw std::invalid_argument("box qp: lo > hi");
  }
}

}  // namespace

double qp_objective(const BoxQP& p, const std::vector<double>& x) {
  double sq = 0.0, s = 0.0, lin = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sq += x[i] * x[i];
    s += x[i];
    lin += p.c[i] * x[i];
  }
  return 0.5 * p.beta * (sq + s * s) + lin;
}

double qp_kkt_residual(const BoxQP& p, const std::vector<double>& x) {
  const double s = std::accumulate(x.begin(), x.end(), 0.0);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double g = p.beta * (x[i] + s) + p.c[i];
    const double proj = std::clamp(x[i] - g, p.lo[i], p.hi[i]);
    r = std::max(r, std::abs(x[i] - proj));
  }
  return r;
}

std::vector<double> solve_box_qp(const BoxQP& p, const QpOptions& opt) {
  check_problem(p);
  const std::size_t N = p.c.size();

  auto coord = [&](double s, std::size_t i) {
    return std::clamp(-p.c[i] / p.beta - s, p.lo[i], p.hi[i]);
  };
  auto residual = [&](double s) {
    double sum = 0.0;
    for (std::size_t i = 0; i < N; ++i) sum += coord(s, i);
    return s - sum;
  };

  double a = std::accumulate(p.lo.begin(), p.lo.end(), 0.0);
  double b = std::accumulate(p.hi.begin(), p.hi.end(), 0.0);
  const double tol = opt.residual_tol * std::max(1.0, std::abs(b));
  double s = 0.5 * (a + b);
  for (int it = 0; it < opt.max_bisections && a < b; ++it) {
    s = 0.5 * (a + b);
    const double r = residual(s);
    if (std::abs(r) <= tol) break;
    if (r > 0.0)
      b = s;
    else
      a = s;
  }

  std::vector<double> x(N);
  for (std::size_t i = 0; i < N; ++i) x[i] = coord(s, i);
  return x;
}

BoxQP qp_for_box(const Instance& inst, const ConcaveBox& box) {
  BoxQP p;
  p.beta = inst.beta;
  p.c.resize(inst.N);
  p.lo.resize(inst.N);
  p.hi.resize(inst.N);
  for (int i = 0; i < inst.N; ++i) {
    if (i < inst.n) {
      p.c[i] = box.envelopes[i].slope - inst.alpha;
      p.lo[i] = box.edges[i].lo;
      p.hi[i] = box.edges[i].hi;
    } else {
      p.c[i] = std::get<Affine>(inst.costs[i]).mu - inst.alpha;
      p.lo[i] = inst.lower[i];
      p.hi[i] = inst.upper[i];
    }
  }
  return p;
}

}  // namespace cournot
