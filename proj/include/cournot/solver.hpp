#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "cournot/box.hpp"
#include "cournot/gap.hpp"
#include "cournot/model.hpp"

namespace cournot {

enum class SolveStatus { EpsEquilibrium, NoEquilibrium, IterationLimit, TimeLimit };

const char* to_string(SolveStatus s);

struct Limits {
  long max_iterations{1000000};
  double time_limit_s{std::numeric_limits<double>::infinity()};
};

// A leaf of the adaptive partition with everything the algorithms cache.
struct PartitionNode {
  ConcaveBox box;
  StrategyProfile qp_solution;  // solution of (QD_I) on this leaf
  double rho{0.0};
  int rho_edge_index{-1};
  double deletion_bound{0.0};
  double restricted_gap{std::numeric_limits<double>::quiet_NaN()};
  // caches used by the search loops
  double global_gap{std::numeric_limits<double>::quiet_NaN()};
  double rho_sum{0.0};  // sum of per-edge defect maxima; bounds |gbar - g|
};

struct IterationRecord {
  long k{0};
  std::vector<Interval> selected_box;
  double rho{0.0};
  int j_max{-1};
  double g_incumbent{0.0};
  double eps_k{std::numeric_limits<double>::quiet_NaN()};  // local solver only
  std::size_t leaves{0};
  std::size_t deleted{0};
  double live_volume{0.0};
  double deleted_volume{0.0};
};

struct RunTrace {
  std::vector<IterationRecord> iterations;
  std::vector<ConcaveBox> deleted_boxes;
  double root_volume{0.0};
};

struct SolverOptions {
  Limits limits;
  bool prune_with_deletion_bound{true};
  RunTrace* trace{nullptr};
  std::ostream* log{nullptr};  // JSON lines, one record per iteration
};

struct SolveReport {
  StrategyProfile point;
  double gap_value{std::numeric_limits<double>::infinity()};
  long iterations{0};
  long qp_solves{0};
  long leaves_explored{0};
  SolveStatus status{SolveStatus::NoEquilibrium};
  std::optional<ConcaveBox> certificate;  // local solver: certifying subbox
};

struct Bisection {
  ConcaveBox left;
  ConcaveBox right;
  int edge{-1};
  double point{0.0};
};

// Rule 1: split the edge with the largest envelope defect at the witness,
// at its midpoint; when every defect is zero, split the longest edge.
Bisection rule1_bisect(const Instance& inst, const ConcaveBox& box,
                       const StrategyProfile& witness);

// Search-and-Check over a fixed partition of the piecewise-linear model:
// visits leaves by ascending deletion bound (positive bounds are skipped),
// solves each leaf's QP, returns the first point with gbar <= eps.
SolveReport algorithm1_search_check(const Instance& inst,
                                    const std::vector<ConcaveBox>& partition,
                                    double eps);

// Search-Check-Branch for a global eps-equilibrium.
SolveReport algorithm2_global(const Instance& inst, double eps,
                              const SolverOptions& opt = {});

// Search-Check-Branch for an eps-local equilibrium (certified on a subbox).
SolveReport algorithm3_local(const Instance& inst, double eps,
                             const SolverOptions& opt = {});

}  // namespace cournot
