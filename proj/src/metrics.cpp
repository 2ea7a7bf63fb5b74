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

#include "gdsp/metrics.hpp"

#include <algorithm>
#include <map>

namespace gdsp {

double air(const RankTable& ranks, const IndexSet& team) {
  if (team.empty()) throw InvalidInput("empty team");
  double sum = 0;
  for (Index v : team) sum += 1.0 / ranks.get(v);
  return 1000.0 * sum / static_cast<double>(team.size());
}

TaskSpec random_task(int k, int p, std::uint64_t seed) {
  if (k < 1 || p < 1) throw InvalidInput("random_task requires k >= 1, p >= 1");
  Rng rng(seed);
  std::map<Index, double> multiplicity;
  for (int draw = 0; draw < k; ++draw)
    multiplicity[static_cast<Index>(rng.next_below(p))] += 1.0;
  TaskSpec task;
  for (const auto& [skill, count] : multiplicity)
    task.skill_bounds.push_back({skill, count, kInf});
  return task;
}

Matrix skill_levels_from_publications(const Matrix& counts, double threshold) {
  if ((counts.array() < 0).any())
    throw InvalidInput("publication counts must be non-negative");
  Matrix levels = Matrix::Zero(counts.rows(), counts.cols());
  for (Index i = 0; i < counts.rows(); ++i) {
    double total = counts.row(i).sum();
    if (total <= 0) continue;
    for (Index j = 0; j < counts.cols(); ++j)
      if (counts(i, j) / total > threshold) levels(i, j) = 1.0;
  }
  return levels;
}

Vector rank_vertex_weights(const std::vector<Vector>& field_ranks) {
  if (field_ranks.empty())
    throw InvalidInput("rank_vertex_weights needs at least one field");
  Vector g = field_ranks.front();
  for (size_t j = 1; j < field_ranks.size(); ++j) {
    if (field_ranks[j].size() != g.size())
      throw InvalidInput("field rank vectors have mismatched lengths");
    g = g.cwiseMin(field_ranks[j]);
  }
  return g;
}

}  // namespace gdsp
