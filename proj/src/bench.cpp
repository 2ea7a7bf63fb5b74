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

#include "gdsp/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "gdsp/greedy.hpp"
#include "gdsp/lp_relaxation.hpp"

namespace gdsp {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  auto end = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(end - start).count();
}

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.10g", v);
  return buffer;
}

}  // namespace

std::vector<BenchRow> run_bench(const Instance& inst, const RankTable* ranks,
                                const BenchOptions& options,
                                const GammaSchedule& schedule,
                                const RatioDcaConfig& cfg) {
  const Index p = inst.num_skills();
  if (p < 1) throw InvalidInput("bench requires an instance with skills");
  std::vector<BenchRow> rows;
  DistanceOracle oracle = hop_distance_oracle(inst);

  for (int seed = 0; seed < options.seeds; ++seed) {
    for (int k : options.ks) {
      std::uint64_t task_seed =
          options.seed_base * 0x100000001b3ULL + 1000003ULL * seed + k;
      TaskSpec task = random_task(k, p, task_seed);
      TaskSpec normalized = normalize_task(inst, task);
      ReducedProblem red = reduce_subset(inst, normalized, oracle);

      double lp_bound = std::numeric_limits<double>::quiet_NaN();
      LpRelaxationResult lp_sol;
      bool lp_ok = false;
      if (options.with_lp) {
        try {
          lp_sol = solve_lp_relaxation(red);
          lp_bound = lp_sol.bound;
          lp_ok = true;
        } catch (const std::exception&) {
        }
      }

      for (const std::string& method : options.methods) {
        BenchRow row;
        row.seed = seed;
        row.k = k;
        row.method = method;
        row.lp_bound = lp_bound;
        auto start = std::chrono::steady_clock::now();
        TeamSolution sol;
        try {
          if (method == "forte") {
            sol = forte(inst, task, oracle, schedule, cfg).solution;
          } else if (method == "greedy") {
            auto [set, value] = dinkelbach_greedy(red);
            (void)value;
            sol = expand_solution(red, set, inst, normalized, oracle, "greedy");
          } else if (method == "lpfeas") {
            if (!lp_ok) throw Infeasible("LP unavailable");
            RoundingResult rounding =
                lp_feasible_rounding(red, lp_sol.f, lp_sol.t);
            if (!rounding.team) throw Infeasible(rounding.reason);
            sol = expand_solution(red, rounding.team->first, inst, normalized,
                                  oracle, "lpfeas");
          } else {
            throw InvalidInput("unknown bench method '" + method + "'");
          }
        } catch (const Infeasible&) {
          sol.feasible = false;
          sol.provenance = method;
        }
        row.runtime_ms = options.zero_runtime ? 0.0 : elapsed_ms(start);
        row.density = sol.density;
        row.team_size = static_cast<Index>(sol.team.size());
        row.feasible = sol.feasible;
        row.gap = lp_ok && lp_bound > 0 ? sol.density / lp_bound
                                        : std::numeric_limits<double>::quiet_NaN();
        if (ranks != nullptr && !sol.team.empty())
          row.air = air(*ranks, sol.team);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& os) {
  os << "seed,k,method,density,size,runtime_ms,lp_bound,gap,feasible,air\n";
  for (const BenchRow& row : rows) {
    os << row.seed << ',' << row.k << ',' << row.method << ','
       << format_double(row.density) << ',' << row.team_size << ','
       << format_double(row.runtime_ms) << ','
       << (std::isnan(row.lp_bound) ? "" : format_double(row.lp_bound)) << ','
       << (std::isnan(row.gap) ? "" : format_double(row.gap)) << ','
       << (row.feasible ? 1 : 0) << ','
       << (row.air ? format_double(*row.air) : "") << '\n';
  }
}

}  // namespace gdsp
