#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cournot/gap.hpp"
#include "cournot/harness.hpp"
#include "cournot/model.hpp"
#include "cournot/solver.hpp"

namespace {

using nlohmann::json;

cournot::StrategyProfile load_point(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open point file: " + path);
  const json j = json::parse(in);
  if (j.is_array()) return j.get<std::vector<double>>();
  return j.at("x").get<std::vector<double>>();
}

json report_to_json(const cournot::SolveReport& rep) {
  json j;
  j["point"] = rep.point;
  j["gap"] = rep.gap_value;
  j["iterations"] = rep.iterations;
  j["qp_solves"] = rep.qp_solves;
  j["leaves_explored"] = rep.leaves_explored;
  j["status"] = cournot::to_string(rep.status);
  if (rep.certificate) {
    auto& box = j["certificate_box"] = json::array();
    for (const auto& e : rep.certificate->edges) box.push_back({e.lo, e.hi});
  }
  return j;
}

int exit_code(cournot::SolveStatus s) {
  switch (s) {
    case cournot::SolveStatus::EpsEquilibrium: return 0;
    case cournot::SolveStatus::NoEquilibrium: return 2;
    default: return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nash-Cournot equilibrium solver for oligopolies with separable concave costs"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  int gen_N = 5, gen_n = 5;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "inst.json";
  gen->add_option("--N", gen_N, "number of firms")->required();
  gen->add_option("--n", gen_n, "number of concave-cost firms")->required();
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "output instance file");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  bool s_global = false, s_local = false;
  double s_eps = -1.0;
  long s_max_iter = 1000000;
  double s_time_limit = std::numeric_limits<double>::infinity();
  std::string s_in, s_log;
  solve->add_flag("--global", s_global, "global equilibrium (Search-Check-Branch)");
  solve->add_flag("--local", s_local, "local equilibrium (Search-Check-Branch)");
  solve->add_option("--eps", s_eps, "absolute tolerance (default 1e-4 * alpha * sum u_i)");
  solve->add_option("--max-iter", s_max_iter, "iteration limit");
  solve->add_option("--time-limit", s_time_limit, "time limit in seconds");
  solve->add_option("--in", s_in, "instance file")->required();
  solve->add_option("--log", s_log, "JSON-lines run log file");

  // gap
  auto* gapcmd = app.add_subcommand("gap", "Evaluate the gap function at a point");
  std::string g_in, g_point;
  gapcmd->add_option("--in", g_in, "instance file")->required();
  gapcmd->add_option("--point", g_point, "point file ({\"x\":[...]} or bare array)")->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Brute-force grid oracle (N <= 4)");
  std::string o_in;
  int o_grid = 100;
  oracle->add_option("--in", o_in, "instance file")->required();
  oracle->add_option("--grid", o_grid, "grid points per axis");

  // bench
  auto* benchcmd = app.add_subcommand("bench", "Run the seeded benchmark protocol");
  std::string b_cells = "5x5", b_algo = "global", b_out = "results.csv";
  double b_eps = -1.0;
  long b_max_iter = 1000000;
  double b_time_limit = std::numeric_limits<double>::infinity();
  std::uint64_t b_seed_base = 1;
  benchcmd->add_option("--cells", b_cells, "comma list of NxM cells, e.g. 5x5,50x10");
  benchcmd->add_option("--algo", b_algo, "global or local");
  benchcmd->add_option("--eps", b_eps, "absolute tolerance (default 1e-4 * scale per instance)");
  benchcmd->add_option("--max-iter", b_max_iter, "iteration limit per run");
  benchcmd->add_option("--time-limit", b_time_limit, "time limit per run (s)");
  benchcmd->add_option("--seed-base", b_seed_base, "first seed of each cell");
  benchcmd->add_option("--out", b_out, "CSV output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      cournot::GenSpec spec;
      spec.N = gen_N;
      spec.n = gen_n;
      spec.seed = gen_seed;
      cournot::save_instance(cournot::generate(spec), gen_out);
      std::cout << "wrote " << gen_out << '\n';
      return 0;
    }

    if (*solve) {
      if (s_global == s_local) {
        std::cerr << "solve: pass exactly one of --global or --local\n";
        return 1;
      }
      const auto inst = cournot::load_instance(s_in);
      const double eps = s_eps >= 0.0 ? s_eps : 1e-4 * cournot::problem_scale(inst);
      cournot::SolverOptions opt;
      opt.limits.max_iterations = s_max_iter;
      opt.limits.time_limit_s = s_time_limit;
      std::ofstream logfile;
      if (!s_log.empty()) {
        logfile.open(s_log);
        if (!logfile) throw std::runtime_error("cannot open log file: " + s_log);
        opt.log = &logfile;
      }
      const auto rep = s_global ? cournot::algorithm2_global(inst, eps, opt)
                                : cournot::algorithm3_local(inst, eps, opt);
      json j = report_to_json(rep);
      j["eps"] = eps;
      std::cout << j.dump(2) << '\n';
      return exit_code(rep.status);
    }

    if (*gapcmd) {
      const auto inst = cournot::load_instance(g_in);
      const auto x = load_point(g_point);
      const auto g = cournot::gap(inst, x);
      json j;
      j["gap"] = g.value;
      j["per_firm_argmins"] = g.per_firm_argmins;
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (*oracle) {
      const auto inst = cournot::load_instance(o_in);
      const auto res = cournot::oracle_equilibrium(inst, o_grid);
      json j;
      j["point"] = res.point;
      j["max_improvement"] = res.max_improvement;
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (*benchcmd) {
      cournot::BenchConfig cfg;
      cfg.cells = cournot::parse_cells(b_cells);
      cfg.algorithm = b_algo;
      cfg.eps = b_eps;
      cfg.limits.max_iterations = b_max_iter;
      cfg.limits.time_limit_s = b_time_limit;
      cfg.seed_base = b_seed_base;
      const auto rows = cournot::bench(cfg);
      std::ofstream out(b_out);
      if (!out) throw std::runtime_error("cannot open output file: " + b_out);
      cournot::write_csv(out, rows);
      cournot::write_csv(std::cout, rows);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
