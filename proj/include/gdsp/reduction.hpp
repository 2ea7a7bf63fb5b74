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

#ifndef GDSP_REDUCTION_HPP
#define GDSP_REDUCTION_HPP

#include <string>
#include <vector>

#include "gdsp/instance.hpp"
#include "gdsp/types.hpp"

namespace gdsp {

/// Skill requirement restricted to the reduced universe: levels over V',
/// bounds already shifted by the seed's contribution.
struct ReducedSkill {
  Vector levels;       // length m
  double lower = 0;    // k_j >= 0 (clamped)
  double upper = kInf; // l_j, finite or +inf
};

/// GDSP data on V' = V \ S (minus distance-eliminated vertices).
///
/// Everything is expressed over dense local ids 0..m-1; `to_original` maps
/// them back. `degree` is the weighted degree within V' u S, so that
/// assoc_s(A) below equals assoc(A u S) on the original instance.
struct ReducedProblem {
  Index m = 0;
  EdgeList edges;                // W' over local ids, u < v
  std::vector<std::vector<std::pair<Index, double>>> adj;
  Vector g;                      // vertex weights on V'
  Vector degree;                 // d_i = sum_{j in V' u S} w_ij
  Vector d_seed;                 // dS_i = sum_{j in S} w_ij
  double mu_s = 0;               // assoc(S)
  double nu_s = 0;               // vol_g(S)
  std::vector<ReducedSkill> skill;
  EdgeList violation;            // D_uv = max{0, dist(u,v) - d0} > 0, u < v
  Vector d_violation;            // (d_D)_i = sum_j D_ij
  IndexSet to_original;          // local id -> original id
  IndexSet seed;                 // original ids
  bool seed_feasible = false;    // S alone satisfies every constraint

  Index num_skills() const { return static_cast<Index>(skill.size()); }

  /// assoc_s(A) = vol_d(A) - cut(A, V'\A) + mu_s + vol_dS(A) = assoc(A u S).
  double assoc_s(const IndexSet& set) const;

  /// vol over V' local ids of an arbitrary vector.
  double vol(const Vector& h, const IndexSet& set) const;

  /// vol_{M_j}(A) for skill row j.
  double skill_vol(Index j, const IndexSet& set) const;

  /// Sum over ordered pairs u,v in A of D_uv.
  double violation_mass(const IndexSet& set) const;

  /// GDSP objective assoc_s(A) / (vol_g(A) + nu_s); A may be empty only
  /// when the seed is non-empty.
  double density(const IndexSet& set) const;

  /// True when A satisfies every skill bound and has no violating pair.
  bool feasible(const IndexSet& set) const;

  /// Total degree volume of the reduced universe including the seed fold;
  /// equals assoc(V' u S) and upper-bounds assoc_s(A) for every A.
  double total_assoc() const;
};

/// Per-constraint slack of a candidate team, for reporting.
struct SlackReport {
  struct Entry {
    std::string name;
    double value = 0;   // attained quantity
    double bound = 0;   // the bound it is checked against
    double slack = 0;   // >= 0 iff satisfied
  };
  std::vector<Entry> entries;
  bool all_satisfied = true;
};

/// Final answer in original vertex ids.
struct TeamSolution {
  IndexSet team;
  double density = 0;
  bool feasible = false;
  SlackReport slack;
  std::string provenance;
  double lp_bound = kInf;   // +inf when not computed
  bool has_lp_bound() const { return lp_bound < kInf; }
};

/// Folds the seed into constants, eliminates vertices placed out of reach
/// by the distance bound, shifts skill bounds, and materializes violating
/// pairs. The task must be normalized. Throws Infeasible when the seed
/// itself violates a distance or upper bound, or when some l_j < 0.
ReducedProblem reduce_subset(const Instance& inst, const TaskSpec& task,
                             const DistanceOracle& dist);

/// Slack of team C against the (normalized) task on the original instance.
SlackReport evaluate_slack(const Instance& inst, const TaskSpec& task,
                           const DistanceOracle& dist, const IndexSet& team);

/// Lifts a reduced-space subset back to the original instance, choosing
/// the denser of S alone (when feasible) and A u S.
TeamSolution expand_solution(const ReducedProblem& red, const IndexSet& a,
                             const Instance& inst, const TaskSpec& task,
                             const DistanceOracle& dist,
                             const std::string& provenance);

}  // namespace gdsp

#endif  // GDSP_REDUCTION_HPP
