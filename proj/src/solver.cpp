#include "cournot/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "cournot/qp.hpp"
#include "cournot/scalar.hpp"

namespace cournot {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::EpsEquilibrium: return "EpsEquilibrium";
    case SolveStatus::NoEquilibrium: return "NoEquilibrium";
    case SolveStatus::IterationLimit: return "IterationLimit";
    case SolveStatus::TimeLimit: return "TimeLimit";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rho_sum_of(const Instance& inst, const ConcaveBox& box) {
  double s = 0.0;
  for (int j = 0; j < inst.n; ++j)
    s += rho_edge(inst.costs[j], box.edges[j].lo, box.edges[j].hi);
  return s;
}

// gbar over an arbitrary leaf range; mirrors gap_pwl but avoids copying boxes.
template <class GetBox>
double gbar_over(const Instance& inst, std::size_t count, GetBox leaf,
                 const StrategyProfile& x) {
  const ConcaveBox* home = nullptr;
  for (std::size_t l = 0; l < count; ++l)
    if (box_contains(leaf(l), x)) {
      home = &leaf(l);
      break;
    }
  if (home == nullptr)
    throw std::invalid_argument("gbar: point not covered by the partition");

  const double s = total_output(x);
  double hbar_x = inst.beta * s * s - inst.alpha * s;
  for (int i = 0; i < inst.N; ++i)
    hbar_x += (i < inst.n)
                  ? home->envelopes[i](std::clamp(x[i], home->edges[i].lo,
                                                  home->edges[i].hi))
                  : cost_value(inst.costs[i], x[i]);

  double best_inner = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < count; ++l) {
    const ConcaveBox& L = leaf(l);
    double inner = 0.0;
    for (int i = 0; i < inst.N; ++i) {
      double lo, hi, slope, intercept;
      if (i < inst.n) {
        lo = L.edges[i].lo;
        hi = L.edges[i].hi;
        slope = L.envelopes[i].slope;
        intercept = L.envelopes[i].intercept;
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

PartitionNode make_node(const Instance& inst, ConcaveBox box, long& qp_solves,
                        bool with_restricted_gap) {
  PartitionNode nd;
  nd.box = std::move(box);
  nd.qp_solution = solve_box_qp(qp_for_box(inst, nd.box));
  ++qp_solves;
  const BoxRho r = box_rho(inst, nd.box);
  nd.rho = r.value;
  nd.rho_edge_index = r.edge;
  nd.rho_sum = rho_sum_of(inst, nd.box);
  nd.deletion_bound = deletion_bound(inst, nd.box);
  nd.global_gap = gap(inst, nd.qp_solution).value;
  if (with_restricted_gap)
    nd.restricted_gap =
        gap_restricted(inst, full_intervals(inst, nd.box), nd.qp_solution).value;
  return nd;
}

struct WitnessRefresh {
  const PartitionNode* node{nullptr};
  double gbar{std::numeric_limits<double>::infinity()};
  bool eps_equilibrium{false};
};

// Algorithm 1 pass over the live leaves, reusing their cached QP solutions.
// Candidates are visited by ascending deletion bound; a candidate whose
// global gap exceeds eps by more than its leaf's total envelope defect
// cannot have gbar <= eps (gbar >= g - rho_sum) and is skipped unevaluated.
WitnessRefresh refresh_witness(const Instance& inst,
                               const std::vector<PartitionNode>& leaves,
                               double eps, long& leaves_explored) {
  WitnessRefresh out;
  std::vector<std::size_t> order(leaves.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return leaves[a].deletion_bound < leaves[b].deletion_bound;
  });
  auto leaf_box = [&](std::size_t l) -> const ConcaveBox& { return leaves[l].box; };

  const PartitionNode* proxy_best = nullptr;
  double proxy_val = std::numeric_limits<double>::infinity();
  for (std::size_t idx : order) {
    const PartitionNode& nd = leaves[idx];
    const double lower = nd.global_gap - nd.rho_sum;  // lower bound on gbar
    if (lower < proxy_val) {
      proxy_val = lower;
      proxy_best = &nd;
    }
    if (lower > eps) continue;
    ++leaves_explored;
    const double gb =
        gbar_over(inst, leaves.size(), leaf_box, nd.qp_solution);
    if (gb <= eps) {
      out.node = &nd;
      out.gbar = gb;
      out.eps_equilibrium = true;
      return out;
    }
    if (gb < out.gbar || out.node == nullptr) {
      out.gbar = gb;
      out.node = &nd;
    }
  }
  if (out.node == nullptr) out.node = proxy_best;
  return out;
}

void log_iteration(const SolverOptions& opt, const IterationRecord& rec) {
  if (opt.trace) opt.trace->iterations.push_back(rec);
  if (opt.log) {
    nlohmann::json j;
    j["k"] = rec.k;
    auto& sel = j["selected_box"] = nlohmann::json::array();
    for (const auto& e : rec.selected_box) sel.push_back({e.lo, e.hi});
    j["rho"] = rec.rho;
    j["j_max"] = rec.j_max;
    j["g_incumbent"] = rec.g_incumbent;
    if (std::isfinite(rec.eps_k)) j["eps_k"] = rec.eps_k;
    j["leaves"] = rec.leaves;
    j["deleted"] = rec.deleted;
    *opt.log << j.dump() << '\n';
  }
}

std::size_t select_max_rho(const std::vector<PartitionNode>& leaves) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < leaves.size(); ++i)
    if (leaves[i].rho > leaves[best].rho) best = i;
  return best;
}

double live_volume(const std::vector<PartitionNode>& leaves) {
  double v = 0.0;
  for (const auto& nd : leaves) v += box_volume(nd.box);
  return v;
}

}  // namespace

Bisection rule1_bisect(const Instance& inst, const ConcaveBox& box,
                       const StrategyProfile& witness) {
  const int n = static_cast<int>(box.edges.size());
  if (n == 0) throw std::invalid_argument("rule1_bisect: box has no edges");
  if (witness.size() < static_cast<std::size_t>(n))
    throw std::invalid_argument("rule1_bisect: witness too short");

  int j = -1;
  double best_defect = 0.0;
  for (int jj = 0; jj < n; ++jj) {
    const auto& e = box.edges[jj];
    const double t = std::clamp(witness[jj], e.lo, e.hi);
    const double defect = cost_value(inst.costs[jj], t) - box.envelopes[jj](t);
    if (defect > best_defect) {
      best_defect = defect;
      j = jj;
    }
  }
  if (j < 0) {
    // all defects zero at the witness: bisect the longest edge
    j = 0;
    for (int jj = 1; jj < n; ++jj)
      if (box.edges[jj].width() > box.edges[j].width()) j = jj;
  }

  Bisection bi;
  bi.edge = j;
  bi.point = box.edges[j].mid();
  bi.left = box;
  bi.left.edges[j].hi = bi.point;
  bi.left.envelopes[j] = chord(inst.costs[j], bi.left.edges[j].lo, bi.point);
  bi.right = box;
  bi.right.edges[j].lo = bi.point;
  bi.right.envelopes[j] = chord(inst.costs[j], bi.point, bi.right.edges[j].hi);
  return bi;
}

SolveReport algorithm1_search_check(const Instance& inst,
                                    const std::vector<ConcaveBox>& partition,
                                    double eps) {
  inst.validate();
  if (partition.empty())
    throw std::invalid_argument("algorithm1: empty partition");

  // Deletion bounds first; leaves with a positive bound are never QP-solved.
  std::vector<double> bound(partition.size());
  std::vector<std::size_t> order(partition.size());
  for (std::size_t i = 0; i < partition.size(); ++i) {
    bound[i] = deletion_bound(inst, partition[i]);
    order[i] = i;
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return bound[a] < bound[b]; });

  SolveReport rep;
  rep.status = SolveStatus::NoEquilibrium;
  for (std::size_t idx : order) {
    if (bound[idx] > 0.0) continue;
    const StrategyProfile x = solve_box_qp(qp_for_box(inst, partition[idx]));
    ++rep.qp_solves;
    ++rep.leaves_explored;
    const double gb = gap_pwl(inst, partition, x);
    if (gb < rep.gap_value) {
      rep.gap_value = gb;
      rep.point = x;
    }
    if (gb <= eps) {
      rep.status = SolveStatus::EpsEquilibrium;
      rep.point = x;
      rep.gap_value = gb;
      break;
    }
  }
  rep.iterations = rep.leaves_explored;
  return rep;
}

SolveReport algorithm2_global(const Instance& inst, double eps,
                              const SolverOptions& opt) {
  inst.validate();
  if (!(eps >= 0.0)) throw std::invalid_argument("algorithm2: eps must be >= 0");
  const auto t0 = Clock::now();

  SolveReport rep;
  std::vector<PartitionNode> leaves;
  leaves.push_back(make_node(inst, make_root_box(inst), rep.qp_solves, false));
  ++rep.leaves_explored;
  if (opt.trace) opt.trace->root_volume = box_volume(leaves[0].box);

  StrategyProfile x = leaves[0].qp_solution;
  double gx = leaves[0].global_gap;
  StrategyProfile u = x;

  std::size_t deleted_count = 0;
  double deleted_volume = 0.0;
  long k = 0;
  while (true) {
    if (gx <= eps) {
      rep.status = SolveStatus::EpsEquilibrium;
      break;
    }
    if (inst.n == 0 || leaves.empty()) {
      // exact affine model solved, or every box provably equilibrium-free
      rep.status = SolveStatus::NoEquilibrium;
      break;
    }
    if (k >= opt.limits.max_iterations) {
      rep.status = SolveStatus::IterationLimit;
      break;
    }
    if (seconds_since(t0) > opt.limits.time_limit_s) {
      rep.status = SolveStatus::TimeLimit;
      break;
    }

    const std::size_t isel = select_max_rho(leaves);
    PartitionNode sel = std::move(leaves[isel]);
    leaves[isel] = std::move(leaves.back());
    leaves.pop_back();

    StrategyProfile witness = u;
    for (int j = 0; j < inst.n; ++j)
      witness[j] = std::clamp(witness[j], sel.box.edges[j].lo, sel.box.edges[j].hi);
    Bisection bi = rule1_bisect(inst, sel.box, witness);

    for (ConcaveBox* child : {&bi.left, &bi.right}) {
      PartitionNode nd = make_node(inst, std::move(*child), rep.qp_solves, false);
      ++rep.leaves_explored;
      if (nd.global_gap < gx) {
        gx = nd.global_gap;
        x = nd.qp_solution;
      }
      if (opt.prune_with_deletion_bound && nd.deletion_bound > 0.0) {
        ++deleted_count;
        deleted_volume += box_volume(nd.box);
        if (opt.trace) opt.trace->deleted_boxes.push_back(nd.box);
      } else {
        leaves.push_back(std::move(nd));
      }
    }

    if (!leaves.empty()) {
      const WitnessRefresh w = refresh_witness(inst, leaves, eps, rep.leaves_explored);
      if (w.node != nullptr) {
        u = w.node->qp_solution;
        if (w.node->global_gap < gx) {
          gx = w.node->global_gap;
          x = w.node->qp_solution;
        }
      }
    }

    ++k;
    if (opt.trace || opt.log) {
      IterationRecord rec;
      rec.k = k;
      rec.selected_box = sel.box.edges;
      rec.rho = sel.rho;
      rec.j_max = bi.edge;
      rec.g_incumbent = gx;
      rec.leaves = leaves.size();
      rec.deleted = deleted_count;
      rec.live_volume = live_volume(leaves);
      rec.deleted_volume = deleted_volume;
      log_iteration(opt, rec);
    }
  }

  rep.point = std::move(x);
  rep.gap_value = gx;
  rep.iterations = k;
  return rep;
}

SolveReport algorithm3_local(const Instance& inst, double eps,
                             const SolverOptions& opt) {
  inst.validate();
  if (!(eps > 0.0)) throw std::invalid_argument("algorithm3: eps must be > 0");
  const auto t0 = Clock::now();

  SolveReport rep;
  std::vector<PartitionNode> leaves;
  leaves.push_back(make_node(inst, make_root_box(inst), rep.qp_solves, true));
  ++rep.leaves_explored;
  if (opt.trace) opt.trace->root_volume = box_volume(leaves[0].box);

  StrategyProfile best_point = leaves[0].qp_solution;
  double eps_k = leaves[0].restricted_gap;
  ConcaveBox best_box = leaves[0].box;

  std::size_t deleted_count = 0;
  double deleted_volume = 0.0;
  long k = 0;
  while (true) {
    if (eps_k <= eps) {
      rep.status = SolveStatus::EpsEquilibrium;
      break;
    }
    if (inst.n == 0 || leaves.empty()) {
      rep.status = SolveStatus::NoEquilibrium;
      break;
    }
    if (k >= opt.limits.max_iterations) {
      rep.status = SolveStatus::IterationLimit;
      break;
    }
    if (seconds_since(t0) > opt.limits.time_limit_s) {
      rep.status = SolveStatus::TimeLimit;
      break;
    }

    const std::size_t isel = select_max_rho(leaves);
    PartitionNode sel = std::move(leaves[isel]);
    leaves[isel] = std::move(leaves.back());
    leaves.pop_back();

    // The box's own QP solution serves as the bisection witness.
    Bisection bi = rule1_bisect(inst, sel.box, sel.qp_solution);
    for (ConcaveBox* child : {&bi.left, &bi.right}) {
      PartitionNode nd = make_node(inst, std::move(*child), rep.qp_solves, true);
      ++rep.leaves_explored;
      if (nd.restricted_gap < eps_k) {
        eps_k = nd.restricted_gap;
        best_point = nd.qp_solution;
        best_box = nd.box;
      }
      if (opt.prune_with_deletion_bound && nd.deletion_bound > 0.0) {
        ++deleted_count;
        deleted_volume += box_volume(nd.box);
        if (opt.trace) opt.trace->deleted_boxes.push_back(nd.box);
      } else {
        leaves.push_back(std::move(nd));
      }
    }

    ++k;
    if (opt.trace || opt.log) {
      IterationRecord rec;
      rec.k = k;
      rec.selected_box = sel.box.edges;
      rec.rho = sel.rho;
      rec.j_max = bi.edge;
      rec.g_incumbent = eps_k;
      rec.eps_k = eps_k;
      rec.leaves = leaves.size();
      rec.deleted = deleted_count;
      rec.live_volume = live_volume(leaves);
      rec.deleted_volume = deleted_volume;
      log_iteration(opt, rec);
    }
  }

  rep.point = std::move(best_point);
  rep.gap_value = eps_k;
  rep.iterations = k;
  rep.certificate = std::move(best_box);
  return rep;
}

}  // namespace cournot
