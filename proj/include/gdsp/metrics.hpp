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

#ifndef GDSP_METRICS_HPP
#define GDSP_METRICS_HPP

#include <cstdint>
#include <unordered_map>

#include "gdsp/instance.hpp"
#include "gdsp/types.hpp"

namespace gdsp {

/// External citation ranking; experts missing from the list rank 10001.
struct RankTable {
  std::unordered_map<Index, double> rank;
  double default_rank = 10001;

  double get(Index v) const {
    auto it = rank.find(v);
    return it == rank.end() ? default_rank : it->second;
  }
};

/// Average inverse rank (1000 / |team|) * sum_i 1 / R_i.
double air(const RankTable& ranks, const IndexSet& team);

/// Random task in the style of the quantitative evaluation: k skills drawn
/// uniformly with replacement from p skills; each drawn skill's lower
/// bound is its multiplicity in the sample. Deterministic per seed.
TaskSpec random_task(int k, int p, std::uint64_t seed);

/// Binary skill levels from publication counts: expert i has skill j when
/// strictly more than `threshold` of their publications fall in field j.
Matrix skill_levels_from_publications(const Matrix& counts,
                                      double threshold = 0.25);

/// Generalized vertex weights from per-field rankings: the minimum of the
/// expert's field ranks.
Vector rank_vertex_weights(const std::vector<Vector>& field_ranks);

}  // namespace gdsp

#endif  // GDSP_METRICS_HPP
