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

#include "gdsp/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gdsp {

namespace {

constexpr double kFeasTol = 1e-9;

void require_lower_bound_only(const ReducedProblem& red) {
  for (const ReducedSkill& row : red.skill)
    if (row.upper < kInf)
      throw InvalidInput("greedy baseline handles lower bounds only");
  if (!red.violation.empty())
    throw InvalidInput("greedy baseline handles lower bounds only");
}

// One full peel of V'. `removal_score` ranks candidates (smaller peels
// first); `keep_best` accumulates every intermediate feasible set.
template <typename Score, typename Keep>
void peel(const ReducedProblem& red, Score&& removal_score, Keep&& keep_best) {
  const Index m = red.m;
  std::vector<char> alive(m, 1);
  Vector wdeg = Vector::Zero(m);
  for (const Edge& e : red.edges) {
    wdeg[e.u] += e.w;
    wdeg[e.v] += e.w;
  }
  std::vector<double> skill_vol(red.num_skills(), 0.0);
  for (Index j = 0; j < red.num_skills(); ++j)
    skill_vol[j] = red.skill[j].levels.sum();
  double vol_g = red.g.sum();
  double assoc = red.total_assoc();
  Index count = m;

  keep_best(alive, assoc, vol_g, count);
  while (count > 1) {
    Index pick = -1;
    double pick_score = 0;
    for (Index i = 0; i < m; ++i) {
      if (!alive[i]) continue;
      bool removable = true;
      for (Index j = 0; j < red.num_skills(); ++j) {
        if (skill_vol[j] - red.skill[j].levels[i] <
            red.skill[j].lower - kFeasTol) {
          removable = false;
          break;
        }
      }
      if (!removable) continue;
      double score = removal_score(i, wdeg[i]);
      // Ties: peel the heavier vertex first, then the lower index.
      if (pick < 0 || score < pick_score ||
          (score == pick_score && red.g[i] > red.g[pick])) {
        pick = i;
        pick_score = score;
      }
    }
    if (pick < 0) break;

    alive[pick] = 0;
    assoc -= 2 * (wdeg[pick] + red.d_seed[pick]);
    vol_g -= red.g[pick];
    for (const auto& [other, w] : red.adj[pick])
      if (alive[other]) wdeg[other] -= w;
    for (Index j = 0; j < red.num_skills(); ++j)
      skill_vol[j] -= red.skill[j].levels[pick];
    --count;
    keep_best(alive, assoc, vol_g, count);
  }
}

IndexSet alive_set(const std::vector<char>& alive) {
  IndexSet set;
  for (Index i = 0; i < static_cast<Index>(alive.size()); ++i)
    if (alive[i]) set.push_back(i);
  return set;
}

void require_start_feasible(const ReducedProblem& red) {
  require_lower_bound_only(red);
  if (red.m == 0) throw Infeasible("no feasible superset");
  IndexSet full(red.m);
  std::iota(full.begin(), full.end(), 0);
  if (!red.feasible(full)) throw Infeasible("no feasible superset");
}

}  // namespace

std::pair<IndexSet, double> greedy_lower_bound(const ReducedProblem& red) {
  require_start_feasible(red);
  bool have = false;
  std::vector<char> best_alive;
  double best_density = 0;
  peel(
      red,
      [&red](Index i, double wdeg) { return wdeg + red.d_seed[i]; },
      [&](const std::vector<char>& alive, double assoc, double vol_g,
          Index count) {
        if (count == 0) return;
        double density = assoc / (vol_g + red.nu_s);
        // Ties prefer the smaller (later) set.
        if (!have || density >= best_density) {
          have = true;
          best_density = density;
          best_alive = alive;
        }
      });
  IndexSet best = alive_set(best_alive);
  return {best, red.density(best)};
}

std::pair<IndexSet, double> dinkelbach_greedy(const ReducedProblem& red) {
  require_start_feasible(red);
  IndexSet full(red.m);
  std::iota(full.begin(), full.end(), 0);
  double lambda = red.density(full);

  IndexSet best_overall = full;
  double best_density = lambda;

  for (int round = 0; round < 50; ++round) {
    bool have = false;
    std::vector<char> round_alive;
    double round_h = 0;
    peel(
        red,
        [&red, lambda](Index i, double wdeg) {
          return 2 * (wdeg + red.d_seed[i]) - lambda * red.g[i];
        },
        [&](const std::vector<char>& alive, double assoc, double vol_g,
            Index count) {
          if (count == 0) return;
          double h = assoc - lambda * (vol_g + red.nu_s);
          if (!have || h >= round_h) {  // ties prefer the smaller set
            have = true;
            round_h = h;
            round_alive = alive;
          }
        });
    IndexSet candidate = alive_set(round_alive);
    double density = red.density(candidate);
    if (density > best_density ||
        (density == best_density && candidate.size() < best_overall.size())) {
      best_overall = candidate;
      best_density = density;
    }
    double rel = std::abs(density - lambda) / std::max(lambda, 1e-300);
    lambda = density;
    if (rel < 1e-9) break;
  }
  return {best_overall, best_density};
}

}  // namespace gdsp
