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

#ifndef GDSP_PENALTY_HPP
#define GDSP_PENALTY_HPP

#include <functional>

#include "gdsp/reduction.hpp"
#include "gdsp/types.hpp"

namespace gdsp {

/// Ratio with a non-positive denominator (isolated candidate set/iterate).
class DegenerateRatio : public std::runtime_error {
 public:
  explicit DegenerateRatio(const std::string& what) : std::runtime_error(what) {}
};

/// Penalty regulators: one weight per skill lower bound, one per skill
/// upper bound, one for the whole distance group, plus the minimum
/// infeasibility estimate theta used by the exactness threshold.
struct PenaltyWeights {
  Vector lower;        // gamma for each k_j
  Vector upper;        // gamma for each l_j
  double dist = 0;     // gamma for the violating-pair group
  double theta = 1;

  static PenaltyWeights zeros(const ReducedProblem& red);
  static PenaltyWeights uniform(const ReducedProblem& red, double gamma,
                                double theta = 1);

  double min_active(const ReducedProblem& red) const;
  void validate(const ReducedProblem& red) const;
};

/// Weighted infeasibility of A: sum of gamma-scaled bound violations plus
/// the gamma-scaled mass of violating pairs (ordered). Zero on the empty
/// set by definition.
double penalty(const ReducedProblem& red, const PenaltyWeights& w,
               const IndexSet& a);

/// (vol_g(A) + nu_s + penalty(A)) / assoc_s(A); throws DegenerateRatio when
/// the denominator is non-positive and InvalidInput on an empty set.
double discrete_objective(const ReducedProblem& red, const PenaltyWeights& w,
                          const IndexSet& a);

/// Smallest gamma guaranteeing that every minimizer of the penalized ratio
/// is feasible, given a feasible reference set: (total degree volume /
/// theta) * spvol(A0), nudged above the strict threshold.
double gamma_threshold(const ReducedProblem& red, const IndexSet& feasible_a0,
                       double theta);

/// Minimum infeasibility estimate: 1 for binary skill rows and integral
/// distances, otherwise the smallest positive slack reachable by a single
/// element change. Overridable by callers.
double default_theta(const ReducedProblem& red);

/// Generic Lovasz extension of an arbitrary set function with R(empty)=0,
/// evaluated through sorted threshold sets. Intended for validating the
/// explicit forms; O(m) oracle calls.
double lovasz_extension(const std::function<double(const IndexSet&)>& set_fn,
                        const Vector& f);

/// pen2, the subtracted (submodular) half of the penalty decomposition:
///   sum_j gamma_ub_j min{l_j, vol_j(A)} + sum_j gamma_lb_j min{k_j, vol_j(A)}
///   - gamma_dist * (ordered violating-pair mass of A).
/// Rows with l_j = +inf or k_j = 0 contribute nothing (their counterpart in
/// pen1 is dropped as well, which leaves the difference pen1 - pen2 intact).
double pen2_value(const ReducedProblem& red, const PenaltyWeights& w,
                  const IndexSet& a);

/// Subgradient of S1(f) = <d, f> + <dS, f> + mu_s * max_i f_i; the max term
/// picks the lowest-index maximizer.
Vector subgrad_s1(const ReducedProblem& red, const Vector& f);

/// Subgradient of R2(f), assembled from the per-row threshold case analysis
/// and the signed violating-pair term p(f) - d_D (sign(0) taken as 0).
Vector subgrad_r2(const ReducedProblem& red, const PenaltyWeights& w,
                  const Vector& f);

/// The d.c. split of the continuous objective
///   Q(f) = (R1(f) - R2(f)) / (S1(f) - S2(f)),
/// with R1 = <rho, f> + sigma max_i f_i, R2 the extension of pen2,
/// S1 = <d + dS, f> + mu_s max_i f_i and S2 the total-variation cut term.
class DcParts {
 public:
  DcParts(const ReducedProblem& red, PenaltyWeights w);

  const Vector& rho() const { return rho_; }
  double sigma() const { return sigma_; }
  const PenaltyWeights& weights() const { return weights_; }
  const ReducedProblem& problem() const { return *red_; }

  double r1(const Vector& f) const;
  double r2(const Vector& f) const;
  double s1(const Vector& f) const;
  double s2(const Vector& f) const;

  /// Q(f); throws DegenerateRatio when S1 - S2 <= 0.
  double q(const Vector& f) const;

 private:
  const ReducedProblem* red_;
  PenaltyWeights weights_;
  Vector rho_;
  double sigma_;
};

}  // namespace gdsp

#endif  // GDSP_PENALTY_HPP
