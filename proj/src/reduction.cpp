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

#include "gdsp/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace gdsp {

namespace {

constexpr double kFeasTol = 1e-9;

std::vector<char> membership(Index m, const IndexSet& set) {
  std::vector<char> in(m, 0);
  for (Index v : set) {
    if (v < 0 || v >= m) throw InvalidInput("subset index out of range");
    in[v] = 1;
  }
  return in;
}

}  // namespace

double ReducedProblem::assoc_s(const IndexSet& set) const {
  auto in = membership(m, set);
  double internal = 0;  // ordered pairs inside A, within V'
  double attraction = 0;
  for (Index v : set) {
    attraction += d_seed[v];
    for (const auto& [u, w] : adj[v])
      if (in[u]) internal += w;
  }
  return internal + 2 * attraction + mu_s;
}

double ReducedProblem::vol(const Vector& h, const IndexSet& set) const {
  double total = 0;
  for (Index v : set) total += h[v];
  return total;
}

double ReducedProblem::skill_vol(Index j, const IndexSet& set) const {
  return vol(skill[j].levels, set);
}

double ReducedProblem::violation_mass(const IndexSet& set) const {
  auto in = membership(m, set);
  double total = 0;
  for (const Edge& e : violation)
    if (in[e.u] && in[e.v]) total += 2 * e.w;  // ordered pairs
  return total;
}

double ReducedProblem::density(const IndexSet& set) const {
  if (set.empty() && seed.empty()) throw InvalidInput("empty team");
  double denom = vol(g, set) + nu_s;
  return assoc_s(set) / denom;
}

bool ReducedProblem::feasible(const IndexSet& set) const {
  for (Index j = 0; j < num_skills(); ++j) {
    double v = skill_vol(j, set);
    if (v < skill[j].lower - kFeasTol) return false;
    if (v > skill[j].upper + kFeasTol) return false;
  }
  return violation_mass(set) <= kFeasTol;
}

double ReducedProblem::total_assoc() const {
  double total = mu_s;
  for (Index i = 0; i < m; ++i) total += degree[i] + d_seed[i];
  return total;
}

ReducedProblem reduce_subset(const Instance& inst, const TaskSpec& task,
                             const DistanceOracle& dist) {
  task.validate(inst);
  if (task.size_bound < kInf || task.budget < kInf)
    throw InvalidInput("reduce_subset expects a normalized task");

  const Index n = inst.num_vertices();
  const IndexSet& seed = task.seed;
  const double d0 = task.distance.d0;

  // The seed must be mutually within distance d0, else nothing can contain it.
  if (task.distance.active()) {
    for (size_t a = 0; a < seed.size(); ++a)
      for (size_t b = a + 1; b < seed.size(); ++b)
        if (dist(seed[a], seed[b]) > d0)
          throw Infeasible("infeasible seed: seed pair exceeds the distance bound");
  }

  AssocTerms terms = assoc_terms(inst, seed);

  // Vertices too far from any seed member can never join the team.
  IndexSet survivors;
  for (Index v : terms.complement) {
    bool reachable = true;
    if (task.distance.active()) {
      for (Index s : seed) {
        if (dist(v, s) > d0) {
          reachable = false;
          break;
        }
      }
    }
    if (reachable) survivors.push_back(v);
  }

  ReducedProblem red;
  red.m = static_cast<Index>(survivors.size());
  red.to_original = survivors;
  red.seed = seed;
  red.mu_s = terms.mu_s;
  red.nu_s = terms.nu_s;

  std::vector<Index> local(n, -1);
  for (Index i = 0; i < red.m; ++i) local[survivors[i]] = i;

  red.g = Vector::Zero(red.m);
  red.d_seed = Vector::Zero(red.m);
  for (Index i = 0; i < red.m; ++i) {
    red.g[i] = inst.vertex_weights()[survivors[i]];
    red.d_seed[i] = terms.d_s[survivors[i]];
  }

  for (const Edge& e : inst.edges()) {
    Index u = local[e.u], v = local[e.v];
    if (u >= 0 && v >= 0) red.edges.push_back({std::min(u, v), std::max(u, v), e.w});
  }
  red.adj.resize(red.m);
  red.degree = red.d_seed;  // within V' u S: internal part added below
  for (const Edge& e : red.edges) {
    red.adj[e.u].emplace_back(e.v, e.w);
    red.adj[e.v].emplace_back(e.u, e.w);
    red.degree[e.u] += e.w;
    red.degree[e.v] += e.w;
  }

  // Shift skill bounds by the seed's contribution. A negative upper bound
  // is unsatisfiable; a negative lower bound is clamped to zero.
  bool seed_ok = true;
  for (const SkillBound& b : task.skill_bounds) {
    Vector col = task.skill_column(inst, b.skill);
    double seed_vol = 0;
    for (Index s : seed) seed_vol += col[s];
    double k = b.lower - seed_vol;
    double l = b.upper == kInf ? kInf : b.upper - seed_vol;
    if (l < 0)
      throw Infeasible("infeasible seed: seed exceeds an upper bound");
    if (k > kFeasTol) seed_ok = false;  // seed alone misses a lower bound
    ReducedSkill row;
    row.levels = Vector::Zero(red.m);
    for (Index i = 0; i < red.m; ++i) row.levels[i] = col[survivors[i]];
    row.lower = std::max(k, 0.0);
    row.upper = l;
    red.skill.push_back(std::move(row));
  }
  red.seed_feasible = !seed.empty() && seed_ok;

  // Violating pairs among survivors.
  if (task.distance.active()) {
    red.d_violation = Vector::Zero(red.m);
    for (Index i = 0; i < red.m; ++i) {
      for (Index j = i + 1; j < red.m; ++j) {
        double d = dist(survivors[i], survivors[j]);
        double excess = d - d0;
        if (excess > 0) {
          if (!std::isfinite(excess)) excess = 1 + d0;  // unreachable pair
          red.violation.push_back({i, j, excess});
          red.d_violation[i] += excess;
          red.d_violation[j] += excess;
        }
      }
    }
  } else {
    red.d_violation = Vector::Zero(red.m);
  }

  if (red.m == 0 && !red.seed_feasible)
    throw Infeasible("empty reduced universe");
  return red;
}

SlackReport evaluate_slack(const Instance& inst, const TaskSpec& task,
                           const DistanceOracle& dist, const IndexSet& team) {
  SlackReport report;
  auto add = [&report](std::string name, double value, double bound, double slack) {
    report.entries.push_back({std::move(name), value, bound, slack});
    if (slack < -kFeasTol) report.all_satisfied = false;
  };

  std::vector<char> in(inst.num_vertices(), 0);
  for (Index v : team) in[v] = 1;

  bool seed_in = true;
  for (Index s : task.seed)
    if (!in[s]) seed_in = false;
  if (!task.seed.empty())
    add("seed", seed_in ? 1 : 0, 1, seed_in ? 0.0 : -1.0);

  for (const SkillBound& b : task.skill_bounds) {
    Vector col = task.skill_column(inst, b.skill);
    double v = 0;
    for (Index i : team) v += col[i];
    add("skill_" + std::to_string(b.skill) + "_lower", v, b.lower, v - b.lower);
    if (b.upper < kInf)
      add("skill_" + std::to_string(b.skill) + "_upper", v, b.upper, b.upper - v);
  }

  if (task.distance.active()) {
    double worst = 0;
    for (size_t a = 0; a < team.size(); ++a)
      for (size_t b = a + 1; b < team.size(); ++b)
        worst = std::max(worst, dist(team[a], team[b]));
    add("distance", worst, task.distance.d0, task.distance.d0 - worst);
  }
  return report;
}

TeamSolution expand_solution(const ReducedProblem& red, const IndexSet& a,
                             const Instance& inst, const TaskSpec& task,
                             const DistanceOracle& dist,
                             const std::string& provenance) {
  IndexSet expanded = red.seed;
  for (Index v : a) expanded.push_back(red.to_original[v]);
  std::sort(expanded.begin(), expanded.end());

  struct Candidate {
    IndexSet team;
    double density;
    SlackReport slack;
  };
  std::vector<Candidate> candidates;
  if (!expanded.empty()) {
    Candidate c;
    c.team = expanded;
    c.density = generalized_density(inst, expanded);
    c.slack = evaluate_slack(inst, task, dist, expanded);
    candidates.push_back(std::move(c));
  }
  if (red.seed_feasible && expanded != red.seed) {
    Candidate c;
    c.team = red.seed;
    c.density = generalized_density(inst, red.seed);
    c.slack = evaluate_slack(inst, task, dist, red.seed);
    candidates.push_back(std::move(c));
  }

  TeamSolution sol;
  sol.provenance = provenance;
  if (candidates.empty()) {
    sol.feasible = false;
    return sol;
  }
  const Candidate* best = nullptr;
  for (const Candidate& c : candidates) {
    if (!c.slack.all_satisfied) continue;
    if (best == nullptr || c.density > best->density) best = &c;
  }
  if (best == nullptr) best = &candidates.front();  // best effort, infeasible
  sol.team = best->team;
  sol.density = best->density;
  sol.slack = best->slack;
  sol.feasible = best->slack.all_satisfied;
  return sol;
}

}  // namespace gdsp
