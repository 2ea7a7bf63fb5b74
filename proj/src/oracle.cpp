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

#include "gdsp/oracle.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace gdsp {

namespace {

constexpr double kFeasTol = 1e-9;

IndexSet mask_to_set(std::uint32_t mask) {
  IndexSet set;
  for (Index i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) set.push_back(i);
  return set;
}

// Incremental subset state walked in Gray-code order: one vertex toggles
// per step, all sums update in O(deg + p).
struct GrayScan {
  const ReducedProblem& red;
  std::vector<char> in;
  double vol_g = 0;
  double internal = 0;    // ordered pairs inside A within V'
  double attraction = 0;  // sum of d_seed over A
  double pair_violation = 0;  // sum over unordered violating pairs in A
  std::vector<double> skill_vol;
  std::vector<std::vector<std::pair<Index, double>>> violation_adj;

  explicit GrayScan(const ReducedProblem& r)
      : red(r), in(r.m, 0), skill_vol(r.num_skills(), 0.0) {
    violation_adj.resize(r.m);
    for (const Edge& e : r.violation) {
      violation_adj[e.u].emplace_back(e.v, e.w);
      violation_adj[e.v].emplace_back(e.u, e.w);
    }
  }

  void toggle(Index x) {
    double w_inside = 0;
    for (const auto& [y, w] : red.adj[x])
      if (in[y]) w_inside += w;
    double d_inside = 0;
    for (const auto& [y, w] : violation_adj[x])
      if (in[y]) d_inside += w;
    if (in[x]) {
      in[x] = 0;
      vol_g -= red.g[x];
      internal -= 2 * w_inside;
      attraction -= red.d_seed[x];
      pair_violation -= d_inside;
      for (Index j = 0; j < red.num_skills(); ++j)
        skill_vol[j] -= red.skill[j].levels[x];
    } else {
      in[x] = 1;
      vol_g += red.g[x];
      internal += 2 * w_inside;
      attraction += red.d_seed[x];
      pair_violation += d_inside;
      for (Index j = 0; j < red.num_skills(); ++j)
        skill_vol[j] += red.skill[j].levels[x];
    }
  }

  double assoc_s() const { return internal + 2 * attraction + red.mu_s; }

  bool feasible() const {
    for (Index j = 0; j < red.num_skills(); ++j) {
      if (skill_vol[j] < red.skill[j].lower - kFeasTol) return false;
      if (skill_vol[j] > red.skill[j].upper + kFeasTol) return false;
    }
    return pair_violation <= kFeasTol;
  }

  double weighted_penalty(const PenaltyWeights& w) const {
    double pen = 0;
    for (Index j = 0; j < red.num_skills(); ++j) {
      const ReducedSkill& row = red.skill[j];
      if (row.upper < kInf)
        pen += w.upper[j] * std::max(0.0, skill_vol[j] - row.upper);
      if (row.lower > 0)
        pen += w.lower[j] * std::max(0.0, row.lower - skill_vol[j]);
    }
    pen += w.dist * 2 * pair_violation;  // ordered pairs
    return pen;
  }
};

template <typename Visit>
void enumerate(const ReducedProblem& red, Visit&& visit) {
  GrayScan scan(red);
  const std::uint32_t total = 1u << red.m;
  std::uint32_t mask = 0;
  for (std::uint32_t k = 1; k < total; ++k) {
    Index toggled = std::countr_zero(k);
    scan.toggle(toggled);
    mask ^= 1u << toggled;
    visit(mask, scan);
  }
}

}  // namespace

OracleResult brute_force_gdsp(const ReducedProblem& red) {
  if (red.m > 22) throw InvalidInput("brute_force_gdsp: m > 22 refused");
  OracleResult out;
  const bool table = red.m <= 12;
  if (table) {
    out.value_table.assign(std::size_t{1} << red.m,
                           std::numeric_limits<double>::quiet_NaN());
    out.feasible_table.assign(std::size_t{1} << red.m, 0);
  }
  std::uint32_t best_mask = 0;
  int best_size = 0;
  enumerate(red, [&](std::uint32_t mask, const GrayScan& scan) {
    double assoc = scan.assoc_s();
    double density = assoc / (scan.vol_g + red.nu_s);
    bool ok = scan.feasible();
    if (table) {
      out.value_table[mask] = density;
      out.feasible_table[mask] = ok ? 1 : 0;
    }
    if (!ok) return;
    ++out.feasible_count;
    if (!(assoc > 0)) return;
    int size = std::popcount(mask);
    bool better = !out.found || density > out.best_value ||
                  (density == out.best_value &&
                   (size < best_size ||
                    (size == best_size && mask < best_mask)));
    if (better) {
      out.found = true;
      out.best_value = density;
      best_mask = mask;
      best_size = size;
    }
  });
  if (out.found) {
    out.best_set = mask_to_set(best_mask);
    out.best_value = red.density(out.best_set);  // exact recomputation
    out.best_feasible = true;
  }
  return out;
}

OracleResult brute_force_penalized(const ReducedProblem& red,
                                   const PenaltyWeights& w) {
  if (red.m > 18) throw InvalidInput("brute_force_penalized: m > 18 refused");
  w.validate(red);
  OracleResult out;
  const bool table = red.m <= 12;
  if (table) {
    out.value_table.assign(std::size_t{1} << red.m,
                           std::numeric_limits<double>::quiet_NaN());
    out.feasible_table.assign(std::size_t{1} << red.m, 0);
  }
  std::uint32_t best_mask = 0;
  int best_size = 0;
  bool best_feasible = false;
  enumerate(red, [&](std::uint32_t mask, const GrayScan& scan) {
    double assoc = scan.assoc_s();
    bool ok = scan.feasible();
    if (ok) ++out.feasible_count;
    if (!(assoc > 0)) return;
    double obj = (scan.vol_g + red.nu_s + scan.weighted_penalty(w)) / assoc;
    if (table) {
      out.value_table[mask] = obj;
      out.feasible_table[mask] = ok ? 1 : 0;
    }
    int size = std::popcount(mask);
    bool better = !out.found || obj < out.best_value ||
                  (obj == out.best_value &&
                   (size < best_size ||
                    (size == best_size && mask < best_mask)));
    if (better) {
      out.found = true;
      out.best_value = obj;
      best_mask = mask;
      best_size = size;
      best_feasible = ok;
    }
  });
  if (out.found) {
    out.best_set = mask_to_set(best_mask);
    out.best_value = discrete_objective(red, w, out.best_set);
    out.best_feasible = best_feasible;
  }
  return out;
}

}  // namespace gdsp
