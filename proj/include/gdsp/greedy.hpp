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

#ifndef GDSP_GREEDY_HPP
#define GDSP_GREEDY_HPP

#include <utility>

#include "gdsp/reduction.hpp"

namespace gdsp {

/// Peeling baseline for lower-bound-only tasks: starting from V', remove
/// the vertex with the smallest current weighted degree plus seed
/// attraction among those whose removal keeps all lower bounds
/// satisfiable, and return the densest intermediate set. Throws
/// InvalidInput when an upper bound or distance pair is present and
/// Infeasible when even V' misses a lower bound.
std::pair<IndexSet, double> greedy_lower_bound(const ReducedProblem& red);

/// Dinkelbach iteration on top of the peeling step: each round peels the
/// shifted objective assoc_s(A) - lambda (vol_g(A) + nu_s) and updates
/// lambda with the density of the best set found, until the ratio
/// stabilizes. Handles general vertex weights.
std::pair<IndexSet, double> dinkelbach_greedy(const ReducedProblem& red);

}  // namespace gdsp

#endif  // GDSP_GREEDY_HPP
