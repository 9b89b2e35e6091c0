#include "cournot/box.hpp"

#include <cmath>
#include <stdexcept>

namespace cournot {

ConcaveBox make_root_box(const Instance& inst) {
  std::vector<Interval> edges;
  edges.reserve(inst.n);
  for (int j = 0; j < inst.n; ++j)
    edges.push_back({inst.lower[j], inst.upper[j]});
  return make_box(inst, std::move(edges));
}

ConcaveBox make_box(const Instance& inst, std::vector<Interval> edges) {
  if (edges.size() != static_cast<std::size_t>(inst.n))
    throw std::invalid_argument("make_box: expected n edges");
  ConcaveBox box;
  box.envelopes.reserve(edges.size());
  for (int j = 0; j < inst.n; ++j) {
    const auto& e = edges[j];
    if (!(e.lo <= e.hi) || e.lo < inst.lower[j] - 1e-12 || e.hi > inst.upper[j] + 1e-12)
      throw std::invalid_argument("make_box: edge outside the strategy interval");
    box.envelopes.push_back(chord(inst.costs[j], e.lo, e.hi));
  }
  box.edges = std::move(edges);
  return box;
}

bool box_contains(const ConcaveBox& box, const StrategyProfile& x) {
  if (x.size() < box.edges.size()) return false;
  for (std::size_t j = 0; j < box.edges.size(); ++j) {
    const auto& e = box.edges[j];
    const double tol = 1e-9 * (1.0 + std::abs(e.lo) + std::abs(e.hi));
    if (x[j] < e.lo - tol || x[j] > e.hi + tol) return false;
  }
  return true;
}

double box_volume(const ConcaveBox& box) {
  double v = 1.0;
  for (const auto& e : box.edges) v *= e.width();
  return v;
}

std::vector<Interval> full_intervals(const Instance& inst, const ConcaveBox& box) {
  std::vector<Interval> out = box.edges;
  out.reserve(inst.N);
  for (int i = inst.n; i < inst.N; ++i)
    out.push_back({inst.lower[i], inst.upper[i]});
  return out;
}

BoxRho box_rho(const Instance& inst, const ConcaveBox& box) {
  BoxRho r;
  for (int j = 0; j < inst.n; ++j) {
    const double v = rho_edge(inst.costs[j], box.edges[j].lo, box.edges[j].hi);
    if (v > r.value || r.edge < 0) {
      r.value = v;
      r.edge = j;
    }
  }
  return r;
}

}  // namespace cournot
