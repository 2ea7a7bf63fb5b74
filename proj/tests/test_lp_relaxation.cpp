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

#include <doctest.h>

#include <sstream>

#include "gdsp/lp_relaxation.hpp"
#include "gdsp/oracle.hpp"
#include "gdsp/penalty.hpp"
#include "support/random_instances.hpp"

using namespace gdsp;

namespace {

ReducedProblem reduce_plain(const Instance& inst, TaskSpec task) {
  return reduce_subset(inst, normalize_task(inst, task),
                       hop_distance_oracle(inst));
}

Instance triangle_with_skill() {
  EdgeList edges = {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}};
  Matrix skills(3, 1);
  skills << 1, 1, 0;
  return Instance(3, edges, Vector::Ones(3), skills, Vector::Zero(3));
}

}  // namespace

TEST_CASE("unconstrained triangle relaxation is tight") {
  ReducedProblem red = reduce_plain(triangle_with_skill(), {});
  LpRelaxationResult res = solve_lp_relaxation(red);
  // f = alpha = 1/3 with any t >= 1/3 attains 2, and the discrete optimum
  // over all subsets is 2 as well, so the bound is exact here.
  OracleResult oracle = brute_force_gdsp(red);
  CHECK(res.bound == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(res.bound >= oracle.best_value - 1e-7);
}

TEST_CASE("empty universe is rejected") {
  Instance inst = triangle_with_skill();
  TaskSpec task;
  task.seed = {0, 1, 2};
  ReducedProblem red = reduce_plain(inst, task);
  CHECK(red.m == 0);
  CHECK_THROWS_WITH_AS(build_lp(red), "empty reduced universe", InvalidInput);
}

TEST_CASE("violating pairs produce distance rows") {
  Instance inst = Instance::from_edges(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  TaskSpec task;
  task.distance.d0 = 2;
  ReducedProblem red = reduce_plain(inst, task);
  LinearProgram lp = build_lp(red);
  // Expect a row f_0 + f_3 - t <= 0.
  bool found = false;
  for (const auto& row : lp.rows) {
    if (row.coeffs.size() != 3) continue;
    bool has_f0 = false, has_f3 = false, has_t = false;
    for (const auto& [var, coeff] : row.coeffs) {
      if (var == 1 && coeff == 1.0) has_f0 = true;
      if (var == 4 && coeff == 1.0) has_f3 = true;
      if (var == 0 && coeff == -1.0) has_t = true;
    }
    if (has_f0 && has_f3 && has_t) found = true;
  }
  CHECK(found);
}

TEST_CASE("upper bound soundness against the oracle") {
  Rng rng(101);
  for (int trial = 0; trial < 12; ++trial) {
    testing::InstanceConfig cfg;
    cfg.n = 6 + static_cast<int>(rng.next_below(5));
    cfg.unit_weights = trial % 2 == 0;
    Instance inst = testing::random_instance(rng, cfg);
    testing::FeasibleTaskConfig task_cfg;
    task_cfg.with_upper = trial % 3 == 0;
    task_cfg.with_distance = trial % 4 == 0;
    task_cfg.with_seed = trial % 2 == 1;
    auto gen = testing::feasible_task(rng, inst, task_cfg);
    ReducedProblem red = reduce_plain(inst, gen.task);
    OracleResult oracle = brute_force_gdsp(red);
    if (!oracle.found) continue;
    double bound = lp_upper_bound(red);
    CHECK(bound >= oracle.best_value - 1e-7);
  }
}

TEST_CASE("pure upper bounds leave the relaxation vacuous") {
  Rng rng(103);
  for (int trial = 0; trial < 6; ++trial) {
    testing::InstanceConfig cfg;
    cfg.n = 7;
    Instance inst = testing::random_instance(rng, cfg);
    ReducedProblem unconstrained = reduce_plain(inst, {});

    TaskSpec task;
    for (Index j = 0; j < inst.num_skills(); ++j)
      task.skill_bounds.push_back({j, 0.0, 1.0 + rng.next_below(3)});
    ReducedProblem bounded = reduce_plain(inst, task);

    double base = lp_upper_bound(unconstrained);
    double with_upper = lp_upper_bound(bounded);
    CHECK(with_upper == doctest::Approx(base).epsilon(1e-7));

    // Constructive scaling: the unconstrained optimum violates upper rows
    // only through t; inflating t restores feasibility at equal objective.
    LpRelaxationResult sol = solve_lp_relaxation(unconstrained);
    double t_big = std::max(sol.t, sol.f.maxCoeff());
    for (const ReducedSkill& row : bounded.skill)
      if (row.upper > 0 && row.upper < kInf)
        t_big = std::max(t_big, row.levels.dot(sol.f) / row.upper);
    for (const ReducedSkill& row : bounded.skill)
      if (row.upper < kInf)
        CHECK(row.levels.dot(sol.f) <= t_big * row.upper + 1e-9);
    CHECK(sol.f.maxCoeff() <= t_big + 1e-12);  // same objective, now feasible
  }
}

TEST_CASE("rounding the LP solution") {
  SUBCASE("zero lower bounds return the best unconstrained threshold") {
    ReducedProblem red = reduce_plain(triangle_with_skill(), {});
    LpRelaxationResult sol = solve_lp_relaxation(red);
    RoundingResult rounding = lp_feasible_rounding(red, sol.f, sol.t);
    REQUIRE(rounding.team.has_value());
    CHECK(rounding.team->second == doctest::Approx(2.0));
  }
  SUBCASE("a binding lower bound is honored") {
    Instance inst = triangle_with_skill();
    TaskSpec task;
    task.skill_bounds.push_back({0, 2.0, kInf});
    ReducedProblem red = reduce_plain(inst, task);
    LpRelaxationResult sol = solve_lp_relaxation(red);
    RoundingResult rounding = lp_feasible_rounding(red, sol.f, sol.t);
    REQUIRE(rounding.team.has_value());
    const IndexSet& team = rounding.team->first;
    CHECK(std::find(team.begin(), team.end(), 0) != team.end());
    CHECK(std::find(team.begin(), team.end(), 1) != team.end());
    CHECK(red.feasible(team));
  }
  SUBCASE("a finite upper bound disables rounding") {
    Instance inst = triangle_with_skill();
    TaskSpec task;
    task.skill_bounds.push_back({0, 0.0, 2.0});
    ReducedProblem red = reduce_plain(inst, task);
    LpRelaxationResult sol = solve_lp_relaxation(red);
    RoundingResult rounding = lp_feasible_rounding(red, sol.f, sol.t);
    CHECK_FALSE(rounding.team.has_value());
    CHECK(rounding.reason == "rounding only valid for lower-bound tasks");
  }
}

TEST_CASE("rounded teams always satisfy the lower bounds") {
  Rng rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    testing::InstanceConfig cfg;
    cfg.n = 6 + static_cast<int>(rng.next_below(5));
    Instance inst = testing::random_instance(rng, cfg);
    auto gen = testing::feasible_task(rng, inst, {});
    ReducedProblem red = reduce_plain(inst, gen.task);
    LpRelaxationResult sol = solve_lp_relaxation(red);
    RoundingResult rounding = lp_feasible_rounding(red, sol.f, sol.t);
    REQUIRE(rounding.team.has_value());
    PenaltyWeights w = PenaltyWeights::uniform(red, 1.0);
    CHECK(penalty(red, w, rounding.team->first) == 0.0);
    CHECK(rounding.team->second <= sol.bound + 1e-7);
  }
}

TEST_CASE("unattainable bounds make the LP infeasible") {
  Instance inst = triangle_with_skill();
  TaskSpec task;
  task.skill_bounds.push_back({0, 3.0, kInf});  // only two skilled vertices
  ReducedProblem red = reduce_plain(inst, task);
  CHECK_THROWS_WITH_AS(lp_upper_bound(red), "LP infeasible", Infeasible);
}

TEST_CASE("LP dump lists the objective and one row per line") {
  ReducedProblem red = reduce_plain(triangle_with_skill(), {});
  std::ostringstream os;
  dump_lp(build_lp(red), os);
  std::string text = os.str();
  CHECK(text.rfind("max", 0) == 0);
  size_t lines = std::count(text.begin(), text.end(), '\n');
  CHECK(lines == 1 + build_lp(red).rows.size());
}
