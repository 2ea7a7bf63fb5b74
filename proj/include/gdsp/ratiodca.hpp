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

#ifndef GDSP_RATIODCA_HPP
#define GDSP_RATIODCA_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gdsp/penalty.hpp"
#include "gdsp/reduction.hpp"

namespace gdsp {

struct RatioDcaConfig {
  double eps_outer = 1e-4;   // relative lambda improvement to keep going
  int max_outer = 60;
  int inner_max = 4000;      // FISTA iteration cap
  double inner_tol = 1e-9;   // relative dual-progress threshold
  bool early_descent = true; // stop the inner solve on sufficient Q descent
  enum class Lipschitz { kPowerIteration, kUpperBound };
  Lipschitz lipschitz_mode = Lipschitz::kPowerIteration;
  int check_every = 25;      // cadence of convergence/early-descent checks
};

/// One convex subproblem of the outer loop:
///   min over u >= 0, |u|_2 <= 1 of
///   (lambda/2) sum_ij w_ij |u_i - u_j| + <u, c> + sigma max_i u_i.
struct InnerProblem {
  Vector c;
  double sigma = 0;
  double lambda = 0;
  const EdgeList* edges = nullptr;
  Index m = 0;

  static InnerProblem from(const DcParts& parts, const Vector& f,
                           double lambda);
};

/// Upper bound on the gradient Lipschitz constant of the smooth dual: the
/// squared operator norm of (alpha, v) -> (lambda/2) A alpha + sigma v.
double lipschitz_estimate(const InnerProblem& ip,
                          RatioDcaConfig::Lipschitz mode);

struct InnerResult {
  Vector u;            // recovered primal, unnormalized
  Vector f;            // u scaled to unit 2-norm (zero vector if u = 0)
  double primal_value = 0;   // 1-homogeneous objective at f
  double dual_value = 0;     // dual objective at the final iterate
  double gap_rel = 0;        // relative duality gap at the final iterate
  int iterations = 0;
  bool inexact = false;      // iteration cap hit before the tolerance
  bool early = false;        // stopped by the sufficient-descent callback
};

/// Called every `check_every` steps with the current normalized primal;
/// returning true terminates the inner solve early.
using EarlyStop = std::function<bool(const Vector&)>;

/// FISTA on the dual over {|alpha|_inf <= 1 antisymmetric, v in simplex};
/// the primal is recovered via projection on the positive orthant.
InnerResult solve_inner(const InnerProblem& ip, const RatioDcaConfig& cfg,
                        const EarlyStop& early_stop = nullptr);

struct ThresholdResult {
  IndexSet set;
  double value = 0;    // penalized discrete objective of `set`
  bool feasible = false;
};

/// Evaluates the penalized ratio on every threshold set of f and returns
/// the minimizer (ties: fewest members). Throws DegenerateRatio when every
/// threshold set has non-positive assoc_s.
ThresholdResult optimal_threshold(const ReducedProblem& red,
                                  const PenaltyWeights& w, const Vector& f);

struct TraceRow {
  int round = 0;        // continuation round (0 for a bare solve)
  int outer_iter = 0;
  double lambda = 0;
  bool threshold_feasible = false;
  Index team_size = 0;
  std::vector<double> gamma;  // snapshot: lower..., upper..., dist
};

struct RatioDcaResult {
  Vector f;
  double lambda = 0;
  std::vector<TraceRow> trace;
  std::optional<ThresholdResult> best_threshold;  // lowest value seen
};

/// Outer descent loop: each step solves one convex problem and accepts the
/// new iterate only if the ratio decreased, so the lambda sequence is
/// non-increasing. A rejected iterate halves the inner tolerance and
/// retries once.
RatioDcaResult ratiodca(const ReducedProblem& red, const PenaltyWeights& w,
                        const Vector& f0, const RatioDcaConfig& cfg);

/// Continuation policy: start unconstrained, then grow gamma only for the
/// constraint groups the current threshold set violates.
struct GammaSchedule {
  double gamma0 = 0;      // <= 0: scale picked from the instance
  double growth = 4;
  int max_rounds = 24;
  double theta = 0;       // <= 0: default_theta(red)
  bool polish = true;     // final run warm-started from the best feasible set
  bool lp_start = false;  // extra continuation pass from the LP solution
};

struct ForteResult {
  TeamSolution solution;
  std::vector<TraceRow> trace;
  ReducedProblem reduced;          // kept for reporting / LP bounds
  IndexSet reduced_team;           // best set in reduced ids
};

/// Full solver: reduce, solve unconstrained, raise penalties until the
/// thresholded set is feasible, then expand back to the original instance.
ForteResult forte(const Instance& inst, const TaskSpec& task,
                  const DistanceOracle& dist, const GammaSchedule& schedule,
                  const RatioDcaConfig& cfg);

}  // namespace gdsp

#endif  // GDSP_RATIODCA_HPP
