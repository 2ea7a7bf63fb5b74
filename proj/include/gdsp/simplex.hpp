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

#ifndef GDSP_SIMPLEX_HPP
#define GDSP_SIMPLEX_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "gdsp/types.hpp"

namespace gdsp {

/// max <objective, x> subject to the rows below and x >= 0.
struct LinearProgram {
  enum class Sense { kLessEqual, kEqual };

  struct Row {
    std::vector<std::pair<Index, double>> coeffs;  // (variable, coefficient)
    Sense sense = Sense::kLessEqual;
    double rhs = 0;
  };

  Index num_vars = 0;
  Vector objective;
  std::vector<Row> rows;
  std::vector<std::string> var_names;  // optional, for dumps

  void add_row(Row row) { rows.push_back(std::move(row)); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  double objective = 0;
  Vector x;
};

const char* to_string(LpStatus status);

/// Dense two-phase tableau simplex. Dantzig pricing with a permanent
/// switch to Bland's rule once degeneracy persists, which guarantees
/// termination. Rejects programs with more than 5000 variables.
LpResult solve_lp(const LinearProgram& lp, int max_iterations = 200000);

/// Plain-text dump: one objective line, then one constraint per line.
void dump_lp(const LinearProgram& lp, std::ostream& os);

}  // namespace gdsp

#endif  // GDSP_SIMPLEX_HPP
