#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cournot/model.hpp"
#include "cournot/solver.hpp"

namespace cournot {

// SplitMix64: the documented generator behind all instance randomness.
// Draws are platform-independent (no std distributions involved).
struct SplitMix64 {
  std::uint64_t state{0};
  std::uint64_t next();
  // uniform in [lo, hi) from the top 53 bits
  double uniform(double lo, double hi);
};

struct Range {
  double lo{0.0};
  double hi{0.0};
};

// Random-instance protocol. Stream 0 draws alpha then beta; firm i (0-based)
// has its own stream drawing, in order: (a, gamma, u) for concave firms,
// (mu, u) for affine firms. Per-firm streams keep earlier firms' draws
// stable when N grows.
struct GenSpec {
  int N{0};
  int n{0};
  std::uint64_t seed{0};
  Range alpha{20.0, 30.0};
  Range beta{0.001, 0.005};
  Range mu{10.0, 20.0};     // affine firms, i > n
  Range a{2.0, 7.0};        // concave firms, log term linear part
  Range gamma{7.0, 15.0};   // concave firms, log term curvature
  Range u{100.0, 500.0};    // upper bounds
  double l{0.0};            // common lower bound
};

Instance generate(const GenSpec& spec);

struct OracleResult {
  StrategyProfile point;
  double max_improvement{0.0};
};

// Product-grid search (N <= 4) for the profile minimizing the maximum
// unilateral profit improvement; each firm's best response is exact.
OracleResult oracle_equilibrium(const Instance& inst, int grid_points_per_axis);

// Largest unilateral profit improvement at x, via exact 1-D best responses.
double max_improvement_at(const Instance& inst, const StrategyProfile& x);

struct BestResponseResult {
  StrategyProfile point;
  bool converged{false};
  int sweeps{0};
};

// Gauss-Seidel sweeps of exact best responses. Concave costs may cycle;
// non-convergence is reported, not an error.
BestResponseResult best_response_iteration(const Instance& inst,
                                           StrategyProfile x0, int max_sweeps);

struct BenchRow {
  int N{0};
  int n{0};
  std::string algorithm;
  double avg_time_s{0.0};
  double avg_iterations{0.0};
  int eps_equilibria_found{0};
  int runs{0};
};

struct BenchConfig {
  std::vector<std::pair<int, int>> cells;  // (N, n)
  std::string algorithm{"global"};         // "global" or "local"
  double eps{-1.0};        // absolute; < 0 means 1e-4 * problem scale per instance
  Limits limits;
  std::uint64_t seed_base{1};
  int instances_per_cell{10};
  int threads{0};  // 0: read COURNOT_THREADS, else hardware concurrency
};

std::vector<BenchRow> bench(const BenchConfig& cfg);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

std::vector<std::pair<int, int>> parse_cells(const std::string& text);  // "5x5,50x10"

}  // namespace cournot
