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

#ifndef GDSP_ORACLE_HPP
#define GDSP_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "gdsp/penalty.hpp"
#include "gdsp/reduction.hpp"

namespace gdsp {

/// Result of an exhaustive scan over all non-empty subsets of V'.
struct OracleResult {
  bool found = false;       // some admissible set exists
  IndexSet best_set;        // empty when !found
  double best_value = 0;
  bool best_feasible = false;
  std::uint64_t feasible_count = 0;

  /// Per-mask tables, filled only when m <= 12 (index = bitmask over V').
  std::vector<double> value_table;    // NaN where undefined
  std::vector<char> feasible_table;
};

/// Maximizes assoc_s(A) / (vol_g(A) + nu_s) over feasible non-empty A with
/// positive assoc_s, by Gray-code enumeration. Refuses m > 22.
OracleResult brute_force_gdsp(const ReducedProblem& red);

/// Minimizes the penalized ratio (vol_g(A) + nu_s + pen(A)) / assoc_s(A)
/// over non-empty A with positive assoc_s. Refuses m > 18.
OracleResult brute_force_penalized(const ReducedProblem& red,
                                   const PenaltyWeights& w);

}  // namespace gdsp

#endif  // GDSP_ORACLE_HPP
