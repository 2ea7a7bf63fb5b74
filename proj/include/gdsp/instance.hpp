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

#ifndef GDSP_INSTANCE_HPP
#define GDSP_INSTANCE_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gdsp/types.hpp"

namespace gdsp {

/// Expert network: weighted undirected graph plus per-vertex data.
///
/// Immutable after construction. The weight matrix is kept as an edge list
/// (u < v, merged duplicates) together with adjacency lists; vertex weights
/// g must be strictly positive, skill levels and costs non-negative.
class Instance {
 public:
  /// Builds an instance from raw parts. Duplicate edges are summed.
  /// Throws InvalidInput on self-loops, non-positive g, negative data or
  /// out-of-range endpoints.
  Instance(Index n, EdgeList edges, Vector g, Matrix skills, Vector costs,
           std::vector<std::string> labels = {});

  /// Unit vertex weights, zero costs, no skills.
  static Instance from_edges(Index n, EdgeList edges);

  Index num_vertices() const { return n_; }
  Index num_skills() const { return static_cast<Index>(skills_.cols()); }
  const EdgeList& edges() const { return edges_; }
  const Vector& vertex_weights() const { return g_; }
  const Matrix& skills() const { return skills_; }
  const Vector& costs() const { return costs_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Weighted degree d_i = sum_j w_ij.
  const Vector& degrees() const { return degree_; }

  /// Neighbours of v as (other endpoint, weight) pairs.
  const std::vector<std::pair<Index, double>>& neighbors(Index v) const {
    return adj_[v];
  }

  /// assoc(C) = sum over ordered pairs i,j in C of w_ij.
  double assoc(const IndexSet& set) const;

  /// vol_h(C) = sum_{i in C} h_i for an arbitrary per-vertex vector h.
  double vol(const Vector& h, const IndexSet& set) const;

  /// cut(A, B) = sum_{i in A, j in B} w_ij.
  double cut(const IndexSet& a, const IndexSet& b) const;

  /// BFS hop counts from `source` on the unweighted graph; unreachable
  /// vertices get +inf.
  Vector hop_distances(Index source) const;

 private:
  Index n_;
  EdgeList edges_;
  Vector g_;
  Matrix skills_;
  Vector costs_;
  std::vector<std::string> labels_;
  Vector degree_;
  std::vector<std::vector<std::pair<Index, double>>> adj_;
};

/// Symmetric pairwise distance oracle over original vertex ids.
using DistanceOracle = std::function<double(Index, Index)>;

/// Hop-count oracle backed by per-source BFS, cached.
DistanceOracle hop_distance_oracle(const Instance& inst);

/// Oracle reading a dense symmetric matrix (validated by the caller).
DistanceOracle matrix_distance_oracle(Matrix dist);

/// One requirement "at least `lower` and at most `upper` of skill `skill`".
struct SkillBound {
  Index skill = 0;   // column of the (possibly extended) skill matrix
  double lower = 0;
  double upper = kInf;
};

/// Distance requirement: all pairwise distances within the team <= d0.
struct DistanceSpec {
  double d0 = kInf;            // +inf disables the constraint
  bool use_matrix = false;     // false: hop counts on the unweighted graph
  std::string matrix_file;     // set when use_matrix
  bool active() const { return d0 < kInf; }
};

/// A task: skill bounds, required seed experts, size/budget caps, locality.
///
/// `extra_skills` holds synthetic skill columns appended by normalize_task
/// (they are addressed by indices >= Instance::num_skills()).
struct TaskSpec {
  std::vector<SkillBound> skill_bounds;
  IndexSet seed;
  double size_bound = kInf;
  double budget = kInf;
  DistanceSpec distance;
  std::vector<Vector> extra_skills;

  /// Skill column `j` of the extended matrix (instance columns first).
  Vector skill_column(const Instance& inst, Index j) const;

  /// Throws InvalidInput if bounds are inconsistent with the instance.
  void validate(const Instance& inst) const;
};

/// density(C) = assoc(C) / vol_g(C). Throws InvalidInput on an empty or
/// out-of-range team.
double generalized_density(const Instance& inst, const IndexSet& team);

/// Constants of the seed fold: mu_S = assoc(S), nu_S = vol_g(S) and the
/// attraction vector dS_i = sum_{j in S} w_ij for every i outside S.
struct AssocTerms {
  double mu_s = 0;
  double nu_s = 0;
  Vector d_s;          // indexed over all n vertices; entries in S unused
  IndexSet complement; // V \ S, ascending
};

AssocTerms assoc_terms(const Instance& inst, const IndexSet& seed);

/// Rewrites the size bound as an all-ones skill row and the budget as a
/// cost-valued skill row; idempotent.
TaskSpec normalize_task(const Instance& inst, TaskSpec task);

}  // namespace gdsp

#endif  // GDSP_INSTANCE_HPP
