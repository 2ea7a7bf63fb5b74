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

#include "gdsp/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gdsp {

namespace {

// Ascending stable order of f (ties by index): the threshold sets A_i are
// suffixes of this order.
std::vector<Index> sorted_order(const Vector& f) {
  std::vector<Index> idx(f.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&f](Index a, Index b) {
    if (f[a] != f[b]) return f[a] < f[b];
    return a < b;
  });
  return idx;
}

// Lovasz extension of min{bound, vol_h} from suffix volumes of the sorted
// order. `order` ascending; suffix[i] = sum of h over order[i..m-1].
double lovasz_min_vol(const Vector& h, double bound, const Vector& f,
                      const std::vector<Index>& order) {
  const Index m = static_cast<Index>(order.size());
  if (m == 0) return 0;
  std::vector<double> suffix(m + 1, 0.0);
  for (Index i = m - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + h[order[i]];
  double value = std::min(bound, suffix[0]) * f[order[0]];
  for (Index i = 0; i + 1 < m; ++i)
    value += std::min(bound, suffix[i + 1]) * (f[order[i + 1]] - f[order[i]]);
  return value;
}

bool is_integral(double x) { return std::abs(x - std::round(x)) < 1e-12; }

}  // namespace

PenaltyWeights PenaltyWeights::zeros(const ReducedProblem& red) {
  PenaltyWeights w;
  w.lower = Vector::Zero(red.num_skills());
  w.upper = Vector::Zero(red.num_skills());
  w.dist = 0;
  w.theta = 1;
  return w;
}

PenaltyWeights PenaltyWeights::uniform(const ReducedProblem& red, double gamma,
                                       double theta) {
  PenaltyWeights w;
  w.lower = Vector::Constant(red.num_skills(), gamma);
  w.upper = Vector::Constant(red.num_skills(), gamma);
  w.dist = gamma;
  w.theta = theta;
  return w;
}

double PenaltyWeights::min_active(const ReducedProblem& red) const {
  double lo = kInf;
  for (Index j = 0; j < red.num_skills(); ++j) {
    if (red.skill[j].lower > 0) lo = std::min(lo, lower[j]);
    if (red.skill[j].upper < kInf) lo = std::min(lo, upper[j]);
  }
  if (!red.violation.empty()) lo = std::min(lo, dist);
  return lo;
}

void PenaltyWeights::validate(const ReducedProblem& red) const {
  if (lower.size() != red.num_skills() || upper.size() != red.num_skills())
    throw InvalidInput("penalty weight vectors sized for a different problem");
  if (dist < 0 || (lower.array() < 0).any() || (upper.array() < 0).any())
    throw InvalidInput("penalty weights must be non-negative");
  if (!(theta > 0)) throw InvalidInput("theta must be positive");
}

double penalty(const ReducedProblem& red, const PenaltyWeights& w,
               const IndexSet& a) {
  w.validate(red);
  if (a.empty()) return 0;
  double pen = 0;
  for (Index j = 0; j < red.num_skills(); ++j) {
    const ReducedSkill& row = red.skill[j];
    double v = red.skill_vol(j, a);
    if (row.upper < kInf) pen += w.upper[j] * std::max(0.0, v - row.upper);
    if (row.lower > 0) pen += w.lower[j] * std::max(0.0, row.lower - v);
  }
  if (w.dist > 0) pen += w.dist * red.violation_mass(a);
  return pen;
}

double discrete_objective(const ReducedProblem& red, const PenaltyWeights& w,
                          const IndexSet& a) {
  if (a.empty()) throw InvalidInput("discrete objective of an empty set");
  double denom = red.assoc_s(a);
  if (!(denom > 0)) throw DegenerateRatio("degenerate denominator");
  return (red.vol(red.g, a) + red.nu_s + penalty(red, w, a)) / denom;
}

double gamma_threshold(const ReducedProblem& red, const IndexSet& feasible_a0,
                       double theta) {
  if (!(theta > 0)) throw InvalidInput("theta must be positive");
  if (feasible_a0.empty() || !red.feasible(feasible_a0))
    throw InvalidInput("gamma_threshold requires a feasible reference set");
  double assoc = red.assoc_s(feasible_a0);
  if (!(assoc > 0)) throw DegenerateRatio("degenerate denominator");
  double spvol = (red.vol(red.g, feasible_a0) + red.nu_s) / assoc;
  return (1.0 + 1e-6) * (red.total_assoc() / theta) * spvol;
}

double default_theta(const ReducedProblem& red) {
  bool integral = true;
  double smallest = kInf;
  auto consider = [&smallest](double x) {
    if (x > 0) smallest = std::min(smallest, x);
  };
  bool any_active = false;
  for (const ReducedSkill& row : red.skill) {
    for (int side = 0; side < 2; ++side) {
      double bound = side == 0 ? row.lower : row.upper;
      bool active = side == 0 ? row.lower > 0 : row.upper < kInf;
      if (!active) continue;
      any_active = true;
      if (!is_integral(bound)) integral = false;
      consider(bound);
      for (Index i = 0; i < row.levels.size(); ++i) {
        double level = row.levels[i];
        if (level == 0) continue;
        if (!is_integral(level)) integral = false;
        consider(level);
        consider(std::abs(bound - level));
      }
    }
  }
  for (const Edge& e : red.violation) {
    any_active = true;
    if (!is_integral(e.w)) integral = false;
    consider(e.w);
  }
  if (!any_active) return 1.0;
  if (integral) return 1.0;
  return smallest < kInf ? smallest : 1.0;
}

double lovasz_extension(const std::function<double(const IndexSet&)>& set_fn,
                        const Vector& f) {
  const Index m = static_cast<Index>(f.size());
  if (m == 0) return 0;
  std::vector<Index> order = sorted_order(f);
  // Build suffix sets in ascending-index form for the oracle.
  double value = 0;
  IndexSet suffix(order.begin(), order.end());
  std::sort(suffix.begin(), suffix.end());
  value += set_fn(suffix) * f[order[0]];
  for (Index i = 0; i + 1 < m; ++i) {
    double gap = f[order[i + 1]] - f[order[i]];
    if (gap != 0) {
      IndexSet tail(order.begin() + i + 1, order.end());
      std::sort(tail.begin(), tail.end());
      value += set_fn(tail) * gap;
    }
  }
  return value;
}

double pen2_value(const ReducedProblem& red, const PenaltyWeights& w,
                  const IndexSet& a) {
  w.validate(red);
  double value = 0;
  for (Index j = 0; j < red.num_skills(); ++j) {
    const ReducedSkill& row = red.skill[j];
    double v = red.skill_vol(j, a);
    if (row.upper < kInf) value += w.upper[j] * std::min(row.upper, v);
    if (row.lower > 0) value += w.lower[j] * std::min(row.lower, v);
  }
  if (w.dist > 0) value -= w.dist * red.violation_mass(a);
  return value;
}

Vector subgrad_s1(const ReducedProblem& red, const Vector& f) {
  Vector s = red.degree + red.d_seed;
  if (red.mu_s != 0 && f.size() > 0) {
    Index arg = 0;
    for (Index i = 1; i < f.size(); ++i)
      if (f[i] > f[arg]) arg = i;
    s[arg] += red.mu_s;
  }
  return s;
}

namespace {

// Per-row subgradient of min{bound, vol_h} via the three-case threshold
// analysis; sorted position i owns the pair (A_i, A_{i+1}), with A_{m+1}
// the empty set.
void add_min_vol_subgrad(const Vector& h, double bound, double gamma,
                         const std::vector<Index>& order, Vector& out) {
  const Index m = static_cast<Index>(order.size());
  std::vector<double> suffix(m + 1, 0.0);
  for (Index i = m - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + h[order[i]];
  for (Index i = 0; i < m; ++i) {
    double vol_here = suffix[i];      // vol(A_{i+1} in 1-based terms)
    double vol_next = suffix[i + 1];  // vol(A_{i+2}); 0 past the end
    double t;
    if (vol_next > bound)
      t = 0;
    else if (vol_here >= bound)
      t = bound - vol_next;
    else
      t = h[order[i]];
    out[order[i]] += gamma * t;
  }
}

}  // namespace

Vector subgrad_r2(const ReducedProblem& red, const PenaltyWeights& w,
                  const Vector& f) {
  w.validate(red);
  Vector r = Vector::Zero(red.m);
  std::vector<Index> order = sorted_order(f);
  for (Index j = 0; j < red.num_skills(); ++j) {
    const ReducedSkill& row = red.skill[j];
    if (row.upper < kInf && w.upper[j] > 0)
      add_min_vol_subgrad(row.levels, row.upper, w.upper[j], order, r);
    if (row.lower > 0 && w.lower[j] > 0)
      add_min_vol_subgrad(row.levels, row.lower, w.lower[j], order, r);
  }
  if (w.dist > 0) {
    // p(f) - d_D, with sign(0) = 0.
    r -= w.dist * red.d_violation;
    for (const Edge& e : red.violation) {
      if (f[e.u] > f[e.v]) {
        r[e.u] += w.dist * e.w;
        r[e.v] -= w.dist * e.w;
      } else if (f[e.v] > f[e.u]) {
        r[e.v] += w.dist * e.w;
        r[e.u] -= w.dist * e.w;
      }
    }
  }
  return r;
}

DcParts::DcParts(const ReducedProblem& red, PenaltyWeights w)
    : red_(&red), weights_(std::move(w)) {
  weights_.validate(red);
  rho_ = red.g;
  sigma_ = red.nu_s;
  for (Index j = 0; j < red.num_skills(); ++j) {
    if (red.skill[j].upper < kInf)
      rho_ += weights_.upper[j] * red.skill[j].levels;
    sigma_ += weights_.lower[j] * red.skill[j].lower;
  }
}

double DcParts::r1(const Vector& f) const {
  double value = rho_.dot(f);
  if (sigma_ != 0 && f.size() > 0) value += sigma_ * f.maxCoeff();
  return value;
}

double DcParts::r2(const Vector& f) const {
  const ReducedProblem& red = *red_;
  double value = 0;
  std::vector<Index> order = sorted_order(f);
  for (Index j = 0; j < red.num_skills(); ++j) {
    const ReducedSkill& row = red.skill[j];
    if (row.upper < kInf && weights_.upper[j] > 0)
      value += weights_.upper[j] *
               lovasz_min_vol(row.levels, row.upper, f, order);
    if (row.lower > 0 && weights_.lower[j] > 0)
      value += weights_.lower[j] *
               lovasz_min_vol(row.levels, row.lower, f, order);
  }
  if (weights_.dist > 0) {
    double dist_part = -red.d_violation.dot(f);
    for (const Edge& e : red.violation)
      dist_part += e.w * std::abs(f[e.u] - f[e.v]);
    value += weights_.dist * dist_part;
  }
  return value;
}

double DcParts::s1(const Vector& f) const {
  const ReducedProblem& red = *red_;
  double value = (red.degree + red.d_seed).dot(f);
  if (red.mu_s != 0 && f.size() > 0) value += red.mu_s * f.maxCoeff();
  return value;
}

double DcParts::s2(const Vector& f) const {
  double value = 0;
  for (const Edge& e : red_->edges) value += e.w * std::abs(f[e.u] - f[e.v]);
  return value;
}

double DcParts::q(const Vector& f) const {
  double denom = s1(f) - s2(f);
  if (!(denom > 0)) throw DegenerateRatio("nonpositive denominator");
  return (r1(f) - r2(f)) / denom;
}

}  // namespace gdsp
