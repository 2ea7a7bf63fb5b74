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

#ifndef GDSP_LP_RELAXATION_HPP
#define GDSP_LP_RELAXATION_HPP

#include <optional>
#include <string>
#include <utility>

#include "gdsp/reduction.hpp"
#include "gdsp/simplex.hpp"

namespace gdsp {

/// The LP relaxation of GDSP over variables (t, f, alpha):
///   max  sum_e 2 w_e alpha_e + 2 <dS, f> + t mu_s
///   s.t. t k_j <= <M_j, f> <= t l_j          for every skill bound
///        f_u + f_v <= t                      for every violating pair
///        alpha_e <= f_u, alpha_e <= f_v      per edge e = (u, v)
///        0 <= f_i <= t,  alpha >= 0,  t >= 0
///        <g, f> + t nu_s = 1.
/// Variable layout: t at 0, f at 1..m, alpha at m+1.. per edge order.
LinearProgram build_lp(const ReducedProblem& red);

/// Solves the relaxation and returns the certified upper bound on the GDSP
/// optimum. Throws Infeasible when the LP (hence GDSP) has no solution.
double lp_upper_bound(const ReducedProblem& red);

/// Upper bound plus the primal blocks, for rounding and reporting.
struct LpRelaxationResult {
  double bound = 0;
  double t = 0;
  Vector f;
};

LpRelaxationResult solve_lp_relaxation(const ReducedProblem& red);

/// Thresholds the LP solution into a feasible team. Only valid when the
/// instance carries lower bounds alone (no finite upper bound, no distance
/// pairs); otherwise returns nothing and explains why.
struct RoundingResult {
  std::optional<std::pair<IndexSet, double>> team;  // set and its density
  std::string reason;  // set when absent
};

RoundingResult lp_feasible_rounding(const ReducedProblem& red,
                                    const Vector& f, double t);

}  // namespace gdsp

#endif  // GDSP_LP_RELAXATION_HPP
