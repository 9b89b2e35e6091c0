#include "cournot/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cournot/gap.hpp"
#include "cournot/scalar.hpp"

namespace cournot {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform(double lo, double hi) {
  const double t = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * t;
}

namespace {

// Independent stream per firm: the firm index perturbs the seed through the
// same finalizer, so draws for firm i do not depend on N.
SplitMix64 stream(std::uint64_t seed, std::uint64_t idx) {
  SplitMix64 s{seed + idx * 0x9E3779B97F4A7C15ULL};
  s.state = s.next();
  return s;
}

void check_range(const Range& r, const char* name) {
  if (!(r.lo <= r.hi)) throw std::invalid_argument(std::string("gen range ") + name);
}

}  // namespace

Instance generate(const GenSpec& spec) {
  if (spec.N < 1 || spec.n < 0 || spec.n > spec.N)
    throw std::invalid_argument("generate: need N >= 1 and 0 <= n <= N");
  check_range(spec.alpha, "alpha");
  check_range(spec.beta, "beta");
  check_range(spec.mu, "mu");
  check_range(spec.a, "a");
  check_range(spec.gamma, "gamma");
  check_range(spec.u, "u");
  if (!(spec.l >= 0.0) || spec.l > spec.u.lo)
    throw std::invalid_argument("generate: bad lower bound");

  Instance inst;
  inst.N = spec.N;
  inst.n = spec.n;
  SplitMix64 g = stream(spec.seed, 0);
  inst.alpha = g.uniform(spec.alpha.lo, spec.alpha.hi);
  inst.beta = g.uniform(spec.beta.lo, spec.beta.hi);
  for (int i = 0; i < spec.N; ++i) {
    SplitMix64 f = stream(spec.seed, static_cast<std::uint64_t>(i) + 1);
    if (i < spec.n) {
      const double a = f.uniform(spec.a.lo, spec.a.hi);
      const double gamma = f.uniform(spec.gamma.lo, spec.gamma.hi);
      inst.costs.push_back(LogConcave{a, gamma});
    } else {
      const double mu = f.uniform(spec.mu.lo, spec.mu.hi);
      inst.costs.push_back(Affine{mu, 0.0});
    }
    inst.lower.push_back(spec.l);
    inst.upper.push_back(f.uniform(spec.u.lo, spec.u.hi));
  }
  inst.validate();
  return inst;
}

double max_improvement_at(const Instance& inst, const StrategyProfile& x) {
  const double s = total_output(x);
  double worst = 0.0;
  for (int i = 0; i < inst.N; ++i) {
    // -profit_i(y | x_-i) = beta y^2 + (beta sigma_-i - alpha) y + h_i(y)
    const double c = inst.beta * (s - x[i]) - inst.alpha;
    const ScalarMin m = minimize_univariate(inst.beta, c, inst.costs[i],
                                            inst.lower[i], inst.upper[i]);
    const double at_x = inst.beta * x[i] * x[i] + c * x[i] +
                        cost_value(inst.costs[i], x[i]);
    worst = std::max(worst, at_x - m.value);
  }
  return worst;
}

OracleResult oracle_equilibrium(const Instance& inst, int grid_points_per_axis) {
  if (inst.N > 4)
    throw std::invalid_argument("oracle_equilibrium: N > 4 exceeds the grid budget");
  if (grid_points_per_axis < 2)
    throw std::invalid_argument("oracle_equilibrium: need >= 2 grid points");
  const double budget = std::pow(static_cast<double>(grid_points_per_axis), inst.N);
  if (budget > 3e8)
    throw std::invalid_argument("oracle_equilibrium: grid budget exceeded");

  const int K = grid_points_per_axis;
  StrategyProfile x(inst.N), best;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<int> idx(inst.N, 0);
  while (true) {
    for (int i = 0; i < inst.N; ++i)
      x[i] = inst.lower[i] +
             (inst.upper[i] - inst.lower[i]) * idx[i] / double(K - 1);
    const double v = max_improvement_at(inst, x);
    if (v < best_val) {
      best_val = v;
      best = x;
    }
    int d = 0;
    while (d < inst.N && ++idx[d] == K) idx[d++] = 0;
    if (d == inst.N) break;
  }
  return {best, best_val};
}

BestResponseResult best_response_iteration(const Instance& inst,
                                           StrategyProfile x0, int max_sweeps) {
  if (!is_feasible(inst, x0))
    throw std::invalid_argument("best_response_iteration: infeasible start");
  const double tol = 1e-10 * problem_scale(inst);
  double s = total_output(x0);
  BestResponseResult res{std::move(x0), false, 0};
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (int i = 0; i < inst.N; ++i) {
      const double c = inst.beta * (s - res.point[i]) - inst.alpha;
      const ScalarMin m = minimize_univariate(inst.beta, c, inst.costs[i],
                                              inst.lower[i], inst.upper[i]);
      max_change = std::max(max_change, std::abs(m.argmin - res.point[i]));
      s += m.argmin - res.point[i];
      res.point[i] = m.argmin;
    }
    ++res.sweeps;
    if (max_change <= tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

namespace {

int thread_budget(const BenchConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("COURNOT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

struct RunOutcome {
  double seconds{0.0};
  long iterations{0};
  bool found{false};
};

RunOutcome run_one(const BenchConfig& cfg, int N, int n, std::uint64_t seed) {
  GenSpec spec;
  spec.N = N;
  spec.n = n;
  spec.seed = seed;
  const Instance inst = generate(spec);
  const double eps = cfg.eps >= 0.0 ? cfg.eps : 1e-4 * problem_scale(inst);
  SolverOptions opt;
  opt.limits = cfg.limits;
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport rep;
  try {
    rep = (cfg.algorithm == "local") ? algorithm3_local(inst, eps, opt)
                                     : algorithm2_global(inst, eps, opt);
  } catch (const std::exception&) {
    return {std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count(),
            0, false};
  }
  RunOutcome out;
  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.iterations = rep.iterations;
  out.found = rep.status == SolveStatus::EpsEquilibrium;
  return out;
}

}  // namespace

std::vector<BenchRow> bench(const BenchConfig& cfg) {
  if (cfg.algorithm != "global" && cfg.algorithm != "local")
    throw std::invalid_argument("bench: algorithm must be global or local");

  struct Job {
    int cell;
    int N, n;
    std::uint64_t seed;
    RunOutcome out;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < cfg.cells.size(); ++c)
    for (int r = 0; r < cfg.instances_per_cell; ++r)
      jobs.push_back({static_cast<int>(c), cfg.cells[c].first,
                      cfg.cells[c].second, cfg.seed_base + r, {}});

  const int threads = std::min(
      thread_budget(cfg), static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= jobs.size()) return;
      jobs[i].out = run_one(cfg, jobs[i].N, jobs[i].n, jobs[i].seed);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<BenchRow> rows(cfg.cells.size());
  for (std::size_t c = 0; c < cfg.cells.size(); ++c) {
    rows[c].N = cfg.cells[c].first;
    rows[c].n = cfg.cells[c].second;
    rows[c].algorithm = cfg.algorithm;
  }
  // jobs are already ordered by (cell, seed); aggregation is order-independent
  for (const Job& j : jobs) {
    BenchRow& r = rows[j.cell];
    r.avg_time_s += j.out.seconds;
    r.avg_iterations += static_cast<double>(j.out.iterations);
    r.eps_equilibria_found += j.out.found ? 1 : 0;
    r.runs += 1;
  }
  for (auto& r : rows) {
    if (r.runs > 0) {
      r.avg_time_s /= r.runs;
      r.avg_iterations /= r.runs;
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "N,n,algorithm,avg_time_s,avg_iterations,eps_equilibria_found\n";
  for (const auto& r : rows)
    out << r.N << ',' << r.n << ',' << r.algorithm << ',' << r.avg_time_s << ','
        << r.avg_iterations << ',' << r.eps_equilibria_found << '\n';
}

std::vector<std::pair<int, int>> parse_cells(const std::string& text) {
  std::vector<std::pair<int, int>> cells;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto x = item.find('x');
    if (x == std::string::npos)
      throw std::invalid_argument("cells: expected NxM entries, got " + item);
    cells.emplace_back(std::stoi(item.substr(0, x)), std::stoi(item.substr(x + 1)));
  }
  if (cells.empty()) throw std::invalid_argument("cells: empty list");
  return cells;
}

}  // namespace cournot
