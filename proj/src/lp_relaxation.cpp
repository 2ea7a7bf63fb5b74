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

#include "gdsp/lp_relaxation.hpp"

#include <algorithm>
#include <numeric>

namespace gdsp {

LinearProgram build_lp(const ReducedProblem& red) {
  if (red.m == 0) throw InvalidInput("empty reduced universe");
  const Index m = red.m;
  const Index n_edges = static_cast<Index>(red.edges.size());
  LinearProgram lp;
  lp.num_vars = 1 + m + n_edges;
  if (lp.num_vars > 5000)
    throw InvalidInput("LP too large for the dense tableau solver (> 5000 variables)");

  const Index var_t = 0;
  auto var_f = [](Index i) { return 1 + i; };
  auto var_a = [m](Index e) { return 1 + m + e; };

  lp.objective = Vector::Zero(lp.num_vars);
  lp.objective[var_t] = red.mu_s;
  for (Index i = 0; i < m; ++i) lp.objective[var_f(i)] = 2 * red.d_seed[i];
  for (Index e = 0; e < n_edges; ++e)
    lp.objective[var_a(e)] = 2 * red.edges[e].w;

  lp.var_names.resize(lp.num_vars);
  lp.var_names[var_t] = "t";
  for (Index i = 0; i < m; ++i) lp.var_names[var_f(i)] = "f" + std::to_string(i);
  for (Index e = 0; e < n_edges; ++e)
    lp.var_names[var_a(e)] = "a" + std::to_string(red.edges[e].u) + "_" +
                             std::to_string(red.edges[e].v);

  using Sense = LinearProgram::Sense;
  for (Index j = 0; j < red.num_skills(); ++j) {
    const ReducedSkill& row = red.skill[j];
    if (row.lower > 0) {
      LinearProgram::Row r;  // t k_j - <M_j, f> <= 0
      r.coeffs.emplace_back(var_t, row.lower);
      for (Index i = 0; i < m; ++i)
        if (row.levels[i] != 0) r.coeffs.emplace_back(var_f(i), -row.levels[i]);
      lp.add_row(std::move(r));
    }
    if (row.upper < kInf) {
      LinearProgram::Row r;  // <M_j, f> - t l_j <= 0
      for (Index i = 0; i < m; ++i)
        if (row.levels[i] != 0) r.coeffs.emplace_back(var_f(i), row.levels[i]);
      r.coeffs.emplace_back(var_t, -row.upper);
      lp.add_row(std::move(r));
    }
  }
  for (const Edge& pair : red.violation) {
    LinearProgram::Row r;  // f_u + f_v - t <= 0
    r.coeffs.emplace_back(var_f(pair.u), 1.0);
    r.coeffs.emplace_back(var_f(pair.v), 1.0);
    r.coeffs.emplace_back(var_t, -1.0);
    lp.add_row(std::move(r));
  }
  for (Index e = 0; e < n_edges; ++e) {
    for (Index endpoint : {red.edges[e].u, red.edges[e].v}) {
      LinearProgram::Row r;  // alpha_e - f_endpoint <= 0
      r.coeffs.emplace_back(var_a(e), 1.0);
      r.coeffs.emplace_back(var_f(endpoint), -1.0);
      lp.add_row(std::move(r));
    }
  }
  for (Index i = 0; i < m; ++i) {
    LinearProgram::Row r;  // f_i - t <= 0
    r.coeffs.emplace_back(var_f(i), 1.0);
    r.coeffs.emplace_back(var_t, -1.0);
    lp.add_row(std::move(r));
  }
  {
    LinearProgram::Row r;  // <g, f> + t nu_s = 1
    for (Index i = 0; i < m; ++i) r.coeffs.emplace_back(var_f(i), red.g[i]);
    if (red.nu_s != 0) r.coeffs.emplace_back(var_t, red.nu_s);
    r.sense = Sense::kEqual;
    r.rhs = 1.0;
    lp.add_row(std::move(r));
  }
  return lp;
}

LpRelaxationResult solve_lp_relaxation(const ReducedProblem& red) {
  LinearProgram lp = build_lp(red);
  LpResult res = solve_lp(lp);
  if (res.status == LpStatus::kInfeasible)
    throw Infeasible("LP infeasible");
  if (res.status != LpStatus::kOptimal)
    throw std::runtime_error(std::string("LP solve failed: ") +
                             to_string(res.status));
  LpRelaxationResult out;
  out.bound = res.objective;
  out.t = res.x[0];
  out.f = res.x.segment(1, red.m);
  return out;
}

double lp_upper_bound(const ReducedProblem& red) {
  return solve_lp_relaxation(red).bound;
}

RoundingResult lp_feasible_rounding(const ReducedProblem& red,
                                    const Vector& f, double t) {
  (void)t;  // threshold sets of f/t equal those of f
  RoundingResult out;
  for (const ReducedSkill& row : red.skill) {
    if (row.upper < kInf) {
      out.reason = "rounding only valid for lower-bound tasks";
      return out;
    }
  }
  if (!red.violation.empty()) {
    out.reason = "rounding only valid for lower-bound tasks";
    return out;
  }
  if (f.size() != red.m) throw InvalidInput("LP block has wrong dimension");

  std::vector<Index> order(red.m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&f](Index a, Index b) {
    if (f[a] != f[b]) return f[a] > f[b];
    return a < b;
  });

  bool have = false;
  IndexSet best;
  double best_density = 0;
  IndexSet current;
  Index pos = 0;
  while (pos < red.m) {
    Index group_end = pos;
    while (group_end < red.m && f[order[group_end]] == f[order[pos]])
      ++group_end;
    for (Index i = pos; i < group_end; ++i) current.push_back(order[i]);
    pos = group_end;
    IndexSet sorted_current = current;
    std::sort(sorted_current.begin(), sorted_current.end());
    if (!red.feasible(sorted_current)) continue;
    double density = red.density(sorted_current);
    if (!have || density > best_density) {
      have = true;
      best = sorted_current;
      best_density = density;
    }
  }
  if (have) out.team = {best, best_density};
  else out.reason = "no feasible threshold set";
  return out;
}

}  // namespace gdsp
