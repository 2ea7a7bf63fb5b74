// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gdsp/bench.hpp"
#include "gdsp/greedy.hpp"
#include "gdsp/io.hpp"
#include "gdsp/lp_relaxation.hpp"
#include "gdsp/oracle.hpp"
#include "gdsp/ratiodca.hpp"

namespace {

using namespace gdsp;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

struct CommonInputs {
  InstanceFiles files;
  std::string task_file;
};

void add_instance_options(CLI::App* cmd, CommonInputs& in, bool with_task) {
  cmd->add_option("--graph", in.files.graph, "edge TSV: u v w")->required();
  cmd->add_option("--skills", in.files.skills, "skill TSV: vertex skill level");
  cmd->add_option("--weights", in.files.weights, "vertex weight TSV: vertex g");
  cmd->add_option("--costs", in.files.costs, "cost TSV: vertex cost");
  if (with_task)
    cmd->add_option("--task", in.task_file, "task JSON")->required();
}

struct LoadedProblem {
  Instance inst;
  TaskSpec task;
  DistanceOracle dist;
};

LoadedProblem load_problem(CommonInputs in) {
  TaskSpec task;
  if (!in.task_file.empty()) {
    std::string costs_file;
    task = load_task_json(in.task_file, &costs_file);
    if (!costs_file.empty() && in.files.costs.empty())
      in.files.costs = costs_file;
  }
  Instance inst = load_instance(in.files);
  DistanceOracle dist = make_distance_oracle(inst, task);
  return {std::move(inst), std::move(task), std::move(dist)};
}

void emit(const std::string& text, const std::string& out_file) {
  if (out_file.empty() || out_file == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_file);
    if (!out) throw InvalidInput("cannot write file: " + out_file);
    out << text;
  }
}

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.10g", v);
  return buffer;
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream os;
  os << "round,gamma,outer_iter,lambda,feasible,team_size\n";
  for (const TraceRow& row : trace) {
    os << row.round << ',';
    for (size_t i = 0; i < row.gamma.size(); ++i)
      os << (i ? ";" : "") << format_double(row.gamma[i]);
    os << ',' << row.outer_iter << ',' << format_double(row.lambda) << ','
       << (row.threshold_feasible ? 1 : 0) << ',' << row.team_size << '\n';
  }
  return os.str();
}

int run_solve(const CommonInputs& in, const std::string& out_file,
              const std::string& trace_file, bool with_lp_bound,
              GammaSchedule schedule, RatioDcaConfig cfg) {
  LoadedProblem problem = load_problem(in);
  ForteResult result =
      forte(problem.inst, problem.task, problem.dist, schedule, cfg);
  if (with_lp_bound) {
    try {
      result.solution.lp_bound = lp_upper_bound(result.reduced);
    } catch (const Infeasible&) {
    }
  }
  if (!trace_file.empty()) emit(trace_csv(result.trace), trace_file);
  emit(solution_to_json(result.solution, problem.inst), out_file);
  return result.solution.feasible ? kExitOk : kExitInfeasible;
}

int run_greedy(const CommonInputs& in, const std::string& out_file) {
  LoadedProblem problem = load_problem(in);
  TaskSpec normalized = normalize_task(problem.inst, problem.task);
  ReducedProblem red = reduce_subset(problem.inst, normalized, problem.dist);
  TeamSolution sol;
  try {
    auto [set, value] = dinkelbach_greedy(red);
    (void)value;
    sol = expand_solution(red, set, problem.inst, normalized, problem.dist,
                          "greedy");
  } catch (const Infeasible& err) {
    std::cerr << "greedy: " << err.what() << "\n";
    return kExitInfeasible;
  }
  emit(solution_to_json(sol, problem.inst), out_file);
  return sol.feasible ? kExitOk : kExitInfeasible;
}

int run_lp(const CommonInputs& in, const std::string& out_file,
           const std::string& dump_file, bool round) {
  LoadedProblem problem = load_problem(in);
  TaskSpec normalized = normalize_task(problem.inst, problem.task);
  ReducedProblem red = reduce_subset(problem.inst, normalized, problem.dist);
  if (!dump_file.empty()) {
    std::ostringstream os;
    dump_lp(build_lp(red), os);
    emit(os.str(), dump_file);
  }
  LpRelaxationResult lp_sol;
  try {
    lp_sol = solve_lp_relaxation(red);
  } catch (const Infeasible& err) {
    std::cerr << "lp: " << err.what() << "\n";
    return kExitInfeasible;
  }
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["lp_bound"] = lp_sol.bound;
  if (round) {
    RoundingResult rounding = lp_feasible_rounding(red, lp_sol.f, lp_sol.t);
    if (rounding.team) {
      TeamSolution sol =
          expand_solution(red, rounding.team->first, problem.inst, normalized,
                          problem.dist, "lpfeas");
      doc["team"] = sol.team;
      doc["density"] = sol.density;
      doc["feasible"] = sol.feasible;
    } else {
      doc["rounding_unavailable"] = rounding.reason;
    }
  }
  emit(doc.dump(2) + "\n", out_file);
  return kExitOk;
}

int run_oracle(const CommonInputs& in, const std::string& out_file) {
  LoadedProblem problem = load_problem(in);
  TaskSpec normalized = normalize_task(problem.inst, problem.task);
  ReducedProblem red = reduce_subset(problem.inst, normalized, problem.dist);
  OracleResult result = brute_force_gdsp(red);  // m > 22 raises InvalidInput
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["feasible_count"] = result.feasible_count;
  if (result.found) {
    TeamSolution sol = expand_solution(red, result.best_set, problem.inst,
                                       normalized, problem.dist, "oracle");
    doc["team"] = sol.team;
    doc["density"] = sol.density;
    emit(doc.dump(2) + "\n", out_file);
    return kExitOk;
  }
  doc["team"] = nlohmann::json::array();
  emit(doc.dump(2) + "\n", out_file);
  return kExitInfeasible;
}

int run_air(const std::string& ranks_file, const std::string& team_arg) {
  RankTable ranks = load_ranks_tsv(ranks_file);
  IndexSet team;
  std::stringstream ss(team_arg);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    team.push_back(std::stoi(token));
  }
  std::cout << format_double(air(ranks, team)) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized densest-subgraph team formation solver"};
  app.require_subcommand(1);

  CommonInputs solve_in, greedy_in, lp_in, oracle_in, bench_in;
  std::string out_file, trace_file, dump_file;
  bool with_lp_bound = false, lp_round = false;
  GammaSchedule schedule;
  RatioDcaConfig cfg;

  auto* solve = app.add_subcommand("solve", "run the continuous solver");
  add_instance_options(solve, solve_in, true);
  solve->add_option("--out", out_file, "output file (default stdout)");
  solve->add_option("--trace", trace_file, "write the solver trace CSV here");
  solve->add_flag("--lp-bound", with_lp_bound, "attach the LP upper bound");
  solve->add_option("--eps", cfg.eps_outer, "outer stopping tolerance");
  solve->add_option("--max-outer", cfg.max_outer, "outer iteration cap");
  solve->add_option("--inner-max", cfg.inner_max, "inner iteration cap");
  solve->add_option("--gamma-growth", schedule.growth, "penalty growth factor");
  solve->add_option("--max-rounds", schedule.max_rounds, "continuation rounds");
  solve->add_flag("--lp-start", schedule.lp_start,
                  "also start a pass from the LP relaxation's solution");

  auto* greedy = app.add_subcommand("greedy", "run the peeling baseline");
  add_instance_options(greedy, greedy_in, true);
  greedy->add_option("--out", out_file, "output file (default stdout)");

  auto* lp = app.add_subcommand("lp", "LP relaxation bound / rounding");
  add_instance_options(lp, lp_in, true);
  lp->add_option("--out", out_file, "output file (default stdout)");
  lp->add_option("--dump", dump_file, "write the LP in row text form");
  lp->add_flag("--round", lp_round, "derive a feasible team by thresholding");

  auto* oracle = app.add_subcommand("oracle", "exhaustive search (m <= 22)");
  add_instance_options(oracle, oracle_in, true);
  oracle->add_option("--out", out_file, "output file (default stdout)");

  auto* random = app.add_subcommand("random-task", "sample a random task");
  int rt_k = 3, rt_p = 4;
  std::uint64_t rt_seed = 0;
  random->add_option("--k", rt_k, "number of skill draws")->required();
  random->add_option("--p", rt_p, "number of skills")->required();
  random->add_option("--seed", rt_seed, "rng seed");
  random->add_option("--out", out_file, "output file (default stdout)");

  auto* bench = app.add_subcommand("bench", "random-task sweep, CSV report");
  add_instance_options(bench, bench_in, false);
  BenchOptions bench_opt;
  std::string ranks_file, methods_arg = "forte";
  bench->add_option("--seeds", bench_opt.seeds, "number of seeded trials");
  bench->add_option("--k", bench_opt.ks, "skill sizes to sweep");
  bench->add_option("--methods", methods_arg, "comma list: forte,greedy,lpfeas");
  bench->add_option("--ranks", ranks_file, "rank TSV for the AIR column");
  bench->add_option("--seed-base", bench_opt.seed_base, "base rng seed");
  bench->add_flag("--zero-runtime", bench_opt.zero_runtime,
                  "report runtime_ms as 0 for byte-stable output");
  bench->add_flag("!--no-lp", bench_opt.with_lp,
                  "skip the per-task LP bound (faster on large graphs)");
  bench->add_option("--out", out_file, "output file (default stdout)");

  auto* air_cmd = app.add_subcommand("air", "average inverse rank of a team");
  std::string air_ranks, air_team;
  air_cmd->add_option("--ranks", air_ranks, "rank TSV")->required();
  air_cmd->add_option("--team", air_team, "comma-separated vertex ids")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return run_solve(solve_in, out_file, trace_file, with_lp_bound, schedule,
                       cfg);
    if (greedy->parsed()) return run_greedy(greedy_in, out_file);
    if (lp->parsed()) return run_lp(lp_in, out_file, dump_file, lp_round);
    if (oracle->parsed()) return run_oracle(oracle_in, out_file);
    if (random->parsed()) {
      TaskSpec task = random_task(rt_k, rt_p, rt_seed);
      nlohmann::json doc;
      doc["skills"] = nlohmann::json::array();
      for (const SkillBound& b : task.skill_bounds)
        doc["skills"].push_back({{"index", b.skill}, {"lower", b.lower}});
      emit(doc.dump(2) + "\n", out_file);
      return kExitOk;
    }
    if (bench->parsed()) {
      bench_opt.methods.clear();
      std::stringstream ss(methods_arg);
      std::string token;
      while (std::getline(ss, token, ','))
        if (!token.empty()) bench_opt.methods.push_back(token);
      Instance inst = load_instance(bench_in.files);
      RankTable ranks;
      bool have_ranks = !ranks_file.empty();
      if (have_ranks) ranks = load_ranks_tsv(ranks_file);
      auto rows = run_bench(inst, have_ranks ? &ranks : nullptr, bench_opt,
                            schedule, cfg);
      std::ostringstream os;
      write_bench_csv(rows, os);
      emit(os.str(), out_file);
      return kExitOk;
    }
    if (air_cmd->parsed()) return run_air(air_ranks, air_team);
  } catch (const Infeasible& err) {
    std::cerr << "infeasible: " << err.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
