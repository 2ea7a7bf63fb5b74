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

#include "gdsp/ratiodca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gdsp/lp_relaxation.hpp"

namespace gdsp {

namespace {

constexpr double kFeasTol = 1e-9;

/// Exact Euclidean projection onto the probability simplex (sort-based).
Vector project_simplex(Vector y) {
  const Index m = static_cast<Index>(y.size());
  std::vector<double> sorted(y.data(), y.data() + m);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double running = 0;
  double tau = 0;
  int support = 0;
  for (Index i = 0; i < m; ++i) {
    running += sorted[i];
    double candidate = (running - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - candidate > 0) {
      tau = candidate;
      support = i + 1;
    }
  }
  (void)support;
  for (Index i = 0; i < m; ++i) y[i] = std::max(y[i] - tau, 0.0);
  return y;
}

std::vector<double> gamma_snapshot(const PenaltyWeights& w) {
  std::vector<double> snap;
  snap.reserve(w.lower.size() + w.upper.size() + 1);
  for (Index j = 0; j < w.lower.size(); ++j) snap.push_back(w.lower[j]);
  for (Index j = 0; j < w.upper.size(); ++j) snap.push_back(w.upper[j]);
  snap.push_back(w.dist);
  return snap;
}

}  // namespace

InnerProblem InnerProblem::from(const DcParts& parts, const Vector& f,
                                double lambda) {
  const ReducedProblem& red = parts.problem();
  InnerProblem ip;
  ip.c = parts.rho() - subgrad_r2(red, parts.weights(), f) -
         lambda * subgrad_s1(red, f);
  ip.sigma = parts.sigma();
  ip.lambda = lambda;
  ip.edges = &red.edges;
  ip.m = red.m;
  return ip;
}

double lipschitz_estimate(const InnerProblem& ip,
                          RatioDcaConfig::Lipschitz mode) {
  const EdgeList& edges = *ip.edges;
  const double lam2 = ip.lambda * ip.lambda;
  const double sig2 = ip.sigma * ip.sigma;
  if (ip.m == 0) return 0;

  if (mode == RatioDcaConfig::Lipschitz::kUpperBound) {
    Vector w2 = Vector::Zero(ip.m);
    std::vector<int> deg(ip.m, 0);
    for (const Edge& e : edges) {
      w2[e.u] += e.w * e.w;
      w2[e.v] += e.w * e.w;
      ++deg[e.u];
      ++deg[e.v];
    }
    double worst = 0;
    for (Index i = 0; i < ip.m; ++i) worst = std::max(worst, w2[i] * deg[i]);
    return lam2 * worst + sig2 * ip.m;
  }

  // Power iteration on B B^T = (lambda^2/2) Lap(w^2) + sigma^2 I.
  if (lam2 == 0 && sig2 == 0) return 0;
  auto apply = [&](const Vector& x) {
    Vector out = sig2 * x;
    for (const Edge& e : edges) {
      double flow = 0.5 * lam2 * e.w * e.w * (x[e.u] - x[e.v]);
      out[e.u] += flow;
      out[e.v] -= flow;
    }
    return out;
  };
  Rng rng(0x5eedULL);
  Vector x(ip.m);
  for (Index i = 0; i < ip.m; ++i) x[i] = 0.5 + rng.next_double();
  x /= x.norm();
  double eig = 0;
  for (int step = 0; step < 30; ++step) {
    Vector y = apply(x);
    double norm = y.norm();
    if (norm == 0) return sig2 > 0 ? sig2 * 1.05 : 0;
    eig = x.dot(y);
    x = y / norm;
  }
  return std::max(eig, 0.0) * 1.05;
}

InnerResult solve_inner(const InnerProblem& ip, const RatioDcaConfig& cfg,
                        const EarlyStop& early_stop) {
  const EdgeList& edges = *ip.edges;
  const Index m = ip.m;
  const Index n_edges = static_cast<Index>(edges.size());
  InnerResult out;

  auto finalize = [&](Vector u) {
    out.u = std::move(u);
    double norm = out.u.norm();
    out.f = norm > 0 ? Vector(out.u / norm) : Vector(Vector::Zero(m));
    return out;
  };

  // 1-homogeneous inner objective at an arbitrary point.
  auto homogeneous = [&](const Vector& u) {
    double value = ip.c.dot(u);
    if (ip.sigma != 0 && m > 0) value += ip.sigma * u.maxCoeff();
    for (const Edge& e : edges)
      value += ip.lambda * e.w * std::abs(u[e.u] - u[e.v]);
    return value;
  };

  const double lip = lipschitz_estimate(ip, cfg.lipschitz_mode);
  if (lip <= 0) {
    // No coupling at all: the regularized problem is separable.
    Vector u = (-ip.c).cwiseMax(0.0);
    finalize(std::move(u));
    out.primal_value = out.f.size() > 0 && out.u.norm() > 0
                           ? homogeneous(out.f)
                           : 0;
    out.dual_value = -0.5 * out.u.squaredNorm();
    return out;
  }

  const double step = 1.0 / lip;
  Vector alpha = Vector::Zero(n_edges), alpha_prev = alpha, y_alpha = alpha;
  Vector v = Vector::Constant(m, m > 0 ? 1.0 / m : 0.0), v_prev = v, y_v = v;
  double t = 1;

  // u recovered from a dual point: P_+(-c - (lambda/2) A alpha - sigma v).
  auto recover = [&](const Vector& a, const Vector& vv) {
    Vector z = -ip.c;
    for (Index e = 0; e < n_edges; ++e) {
      double flow = ip.lambda * edges[e].w * a[e];
      z[edges[e].u] -= flow;
      z[edges[e].v] += flow;
    }
    if (ip.sigma != 0) z -= ip.sigma * vv;
    return z.cwiseMax(0.0).eval();
  };

  Vector best_u = Vector::Zero(m);
  double best_scaled = 0;  // homogeneous value at best_u / |best_u|
  double prev_dual_fn = kInf;
  int iter = 0;

  for (iter = 1; iter <= cfg.inner_max; ++iter) {
    Vector u = recover(y_alpha, y_v);

    alpha_prev.swap(alpha);
    alpha = y_alpha;
    for (Index e = 0; e < n_edges; ++e) {
      double g = 0.5 * ip.lambda * edges[e].w * (u[edges[e].u] - u[edges[e].v]);
      alpha[e] = std::clamp(alpha[e] + step * g, -1.0, 1.0);
    }
    if (ip.sigma != 0) {
      v_prev.swap(v);
      v = project_simplex(y_v + (ip.sigma * step) * u);
    }

    double t_next = 0.5 * (1 + std::sqrt(1 + 4 * t * t));
    double momentum = (t - 1) / t_next;
    y_alpha = alpha + momentum * (alpha - alpha_prev);
    if (ip.sigma != 0) y_v = v + momentum * (v - v_prev);
    t = t_next;

    if (iter % cfg.check_every == 0 || iter == cfg.inner_max) {
      Vector u_cur = recover(alpha, v);
      double dual_fn = 0.5 * u_cur.squaredNorm();  // to be minimized
      double norm = u_cur.norm();
      if (norm > 0) {
        double scaled = homogeneous(u_cur) / norm;
        if (scaled < best_scaled) {
          best_scaled = scaled;
          best_u = u_cur;
        }
      }
      if (dual_fn > prev_dual_fn) {  // function-value restart
        t = 1;
        y_alpha = alpha;
        y_v = v;
      } else if (prev_dual_fn < kInf &&
                 std::abs(prev_dual_fn - dual_fn) <=
                     cfg.inner_tol * std::max(1.0, dual_fn)) {
        prev_dual_fn = dual_fn;
        break;
      }
      prev_dual_fn = dual_fn;

      if (early_stop && norm > 0 && early_stop(Vector(u_cur / norm))) {
        out.early = true;
        break;
      }
    }
  }

  Vector u_final = recover(alpha, v);
  {
    double norm = u_final.norm();
    if (norm > 0) {
      double scaled = homogeneous(u_final) / norm;
      if (scaled < best_scaled) {
        best_scaled = scaled;
        best_u = u_final;
      }
    }
  }
  double primal_smoothed = homogeneous(u_final) + 0.5 * u_final.squaredNorm();
  double dual_value = -0.5 * u_final.squaredNorm();
  double gap = primal_smoothed - dual_value;
  out.gap_rel = gap / std::max({1.0, std::abs(primal_smoothed),
                                std::abs(dual_value)});
  out.dual_value = dual_value;
  out.iterations = iter;
  out.inexact = iter >= cfg.inner_max;
  finalize(std::move(best_u));
  out.primal_value = best_scaled;
  return out;
}

ThresholdResult optimal_threshold(const ReducedProblem& red,
                                  const PenaltyWeights& w, const Vector& f) {
  if (f.size() != red.m) throw InvalidInput("iterate has wrong dimension");
  w.validate(red);
  std::vector<Index> order(red.m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&f](Index a, Index b) {
    if (f[a] != f[b]) return f[a] > f[b];
    return a < b;
  });

  std::vector<std::vector<std::pair<Index, double>>> violation_adj(red.m);
  for (const Edge& e : red.violation) {
    violation_adj[e.u].emplace_back(e.v, e.w);
    violation_adj[e.v].emplace_back(e.u, e.w);
  }

  std::vector<char> in(red.m, 0);
  double vol_g = 0, internal = 0, attraction = 0, pair_violation = 0;
  std::vector<double> skill_vol(red.num_skills(), 0.0);

  bool have = false;
  double best_value = 0;
  Index best_count = 0;
  Index count = 0;

  auto consider = [&]() {
    double assoc = internal + 2 * attraction + red.mu_s;
    if (!(assoc > 0)) return;
    double pen = 0;
    for (Index j = 0; j < red.num_skills(); ++j) {
      const ReducedSkill& row = red.skill[j];
      if (row.upper < kInf)
        pen += w.upper[j] * std::max(0.0, skill_vol[j] - row.upper);
      if (row.lower > 0)
        pen += w.lower[j] * std::max(0.0, row.lower - skill_vol[j]);
    }
    pen += w.dist * 2 * pair_violation;
    double value = (vol_g + red.nu_s + pen) / assoc;
    if (!have || value < best_value) {  // strict: ties keep the smaller set
      have = true;
      best_value = value;
      best_count = count;
    }
  };

  Index pos = 0;
  while (pos < red.m) {
    Index group_end = pos;
    while (group_end < red.m && f[order[group_end]] == f[order[pos]])
      ++group_end;
    for (Index i = pos; i < group_end; ++i) {
      Index x = order[i];
      double w_inside = 0;
      for (const auto& [y, we] : red.adj[x])
        if (in[y]) w_inside += we;
      for (const auto& [y, we] : violation_adj[x])
        if (in[y]) pair_violation += we;
      in[x] = 1;
      vol_g += red.g[x];
      internal += 2 * w_inside;
      attraction += red.d_seed[x];
      for (Index j = 0; j < red.num_skills(); ++j)
        skill_vol[j] += red.skill[j].levels[x];
      ++count;
    }
    consider();
    pos = group_end;
  }
  if (!have) throw DegenerateRatio("no valid threshold");

  ThresholdResult out;
  out.set.assign(order.begin(), order.begin() + best_count);
  std::sort(out.set.begin(), out.set.end());
  out.value = discrete_objective(red, w, out.set);
  out.feasible = red.feasible(out.set);
  return out;
}

RatioDcaResult ratiodca(const ReducedProblem& red, const PenaltyWeights& w,
                        const Vector& f0, const RatioDcaConfig& cfg) {
  if (f0.size() != red.m || red.m == 0)
    throw InvalidInput("starting point has wrong dimension");
  if (f0.minCoeff() < 0 || f0.maxCoeff() <= 0)
    throw InvalidInput("starting point must be non-negative and non-zero");

  DcParts parts(red, w);
  RatioDcaResult out;
  out.f = f0 / f0.norm();
  try {
    out.lambda = parts.q(out.f);
  } catch (const DegenerateRatio&) {
    // Starting support carries no association mass (e.g. an indicator of
    // an isolated vertex); blend towards uniform to obtain a valid ratio.
    out.f += Vector::Constant(red.m, 1e-3 * out.f.maxCoeff());
    out.f /= out.f.norm();
    out.lambda = parts.q(out.f);  // still degenerate: propagate
  }

  auto record = [&](int iter) {
    TraceRow row;
    row.outer_iter = iter;
    row.lambda = out.lambda;
    row.gamma = gamma_snapshot(w);
    try {
      ThresholdResult thr = optimal_threshold(red, w, out.f);
      row.threshold_feasible = thr.feasible;
      row.team_size = static_cast<Index>(thr.set.size());
      if (!out.best_threshold || thr.value < out.best_threshold->value)
        out.best_threshold = thr;
    } catch (const DegenerateRatio&) {
      row.threshold_feasible = false;
      row.team_size = 0;
    }
    out.trace.push_back(std::move(row));
  };
  record(0);

  RatioDcaConfig inner_cfg = cfg;
  bool retried = false;
  for (int l = 1; l <= cfg.max_outer; ++l) {
    InnerProblem ip = InnerProblem::from(parts, out.f, out.lambda);
    EarlyStop early;
    if (cfg.early_descent) {
      early = [&](const Vector& candidate) {
        try {
          ThresholdResult thr = optimal_threshold(red, w, candidate);
          return (out.lambda - thr.value) > cfg.eps_outer * out.lambda;
        } catch (const DegenerateRatio&) {
          return false;
        }
      };
    }
    InnerResult inner = solve_inner(ip, inner_cfg, early);
    if (inner.f.size() == 0 || inner.f.maxCoeff() <= 0) break;

    double lambda_new;
    bool valid = true;
    try {
      lambda_new = parts.q(inner.f);
    } catch (const DegenerateRatio&) {
      valid = false;
      lambda_new = kInf;
    }
    if (!valid || lambda_new >= out.lambda) {
      // Keep the previous iterate; tighten the inner solve and retry once.
      if (!retried) {
        retried = true;
        inner_cfg.inner_tol *= 0.5;
        inner_cfg.inner_max *= 2;
        --l;
        continue;
      }
      break;
    }
    retried = false;
    double rel = (out.lambda - lambda_new) / out.lambda;
    out.f = inner.f;
    out.lambda = lambda_new;
    record(l);
    if (rel < cfg.eps_outer) break;
  }
  return out;
}

namespace {

// Constraint groups violated by a candidate set; used to steer gamma.
struct ViolatedGroups {
  std::vector<Index> lower;
  std::vector<Index> upper;
  bool dist = false;
  bool any() const { return dist || !lower.empty() || !upper.empty(); }
};

ViolatedGroups violated_groups(const ReducedProblem& red, const IndexSet& a) {
  ViolatedGroups out;
  for (Index j = 0; j < red.num_skills(); ++j) {
    double v = red.skill_vol(j, a);
    if (v < red.skill[j].lower - kFeasTol) out.lower.push_back(j);
    if (v > red.skill[j].upper + kFeasTol) out.upper.push_back(j);
  }
  out.dist = red.violation_mass(a) > kFeasTol;
  return out;
}

}  // namespace

ForteResult forte(const Instance& inst, const TaskSpec& task,
                  const DistanceOracle& dist, const GammaSchedule& schedule,
                  const RatioDcaConfig& cfg) {
  if (!(schedule.growth > 1))
    throw InvalidInput("gamma growth factor must exceed 1");
  TaskSpec norm = normalize_task(inst, task);
  ForteResult out;
  out.reduced = reduce_subset(inst, norm, dist);
  ReducedProblem& red = out.reduced;

  if (red.m == 0) {
    out.solution = expand_solution(red, {}, inst, norm, dist, "forte");
    return out;
  }

  const double theta = schedule.theta > 0 ? schedule.theta : default_theta(red);
  PenaltyWeights w = PenaltyWeights::zeros(red);
  w.theta = theta;

  // Scale for the first non-zero gamma; any positive value works, the
  // schedule only needs a sensible starting magnitude.
  double gamma0 = schedule.gamma0;
  if (gamma0 <= 0) {
    IndexSet full(red.m);
    std::iota(full.begin(), full.end(), 0);
    double assoc = red.assoc_s(full);
    double scale = assoc > 0
                       ? (red.total_assoc() / theta) *
                             (red.vol(red.g, full) + red.nu_s) / assoc
                       : 1.0;
    gamma0 = std::max(scale, 1e-12) / 1024.0;
  }

  Vector f = red.degree;
  if (f.maxCoeff() <= 0) f = Vector::Ones(red.m);
  f /= f.norm();

  bool have_feasible = false;
  IndexSet best_feasible;
  double best_feasible_density = -kInf;
  IndexSet last_set;

  auto absorb = [&](const std::vector<TraceRow>& rows, int round) {
    for (TraceRow row : rows) {
      row.round = round;
      out.trace.push_back(std::move(row));
    }
  };
  auto note_candidate = [&](const IndexSet& set) {
    if (set.empty()) return;
    last_set = set;
    if (!red.feasible(set)) return;
    double density = red.density(set);
    if (!have_feasible || density > best_feasible_density) {
      have_feasible = true;
      best_feasible = set;
      best_feasible_density = density;
    }
  };

  int next_round = 0;
  auto run_continuation = [&](Vector f_pass) {
    PenaltyWeights w = PenaltyWeights::zeros(red);
    w.theta = theta;
    for (int round = 0; round <= schedule.max_rounds; ++round, ++next_round) {
      RatioDcaResult run;
      try {
        run = ratiodca(red, w, f_pass, cfg);
      } catch (const DegenerateRatio&) {
        break;  // nothing with positive association reachable from here
      }
      absorb(run.trace, next_round);

      // A warm start can freeze at an infeasible fixed point (the penalized
      // ratio scales the cut term and blocks separation). Retry the round
      // from a penalty-damped profile and keep the better outcome.
      if (round > 0 && run.best_threshold && !run.best_threshold->feasible) {
        DcParts parts(red, w);
        Vector damped(red.m);
        for (Index i = 0; i < red.m; ++i)
          damped[i] = (red.degree[i] + red.d_seed[i]) /
                      (parts.rho()[i] + w.dist * red.d_violation[i]);
        // Deterministic index ramp so symmetric vertices can separate
        // (lower index favored, matching the tie-break conventions).
        for (Index i = 0; i < red.m; ++i)
          damped[i] *= 1.0 + 1e-3 * (red.m - i) / red.m;
        if (damped.maxCoeff() > 0) {
          try {
            RatioDcaResult retry = ratiodca(red, w, damped, cfg);
            absorb(retry.trace, next_round);
            if (retry.best_threshold &&
                (retry.best_threshold->feasible >
                     run.best_threshold->feasible ||
                 (retry.best_threshold->feasible ==
                      run.best_threshold->feasible &&
                  retry.best_threshold->value < run.best_threshold->value)))
              run = std::move(retry);
          } catch (const DegenerateRatio&) {
          }
        }
      }

      if (run.f.size() == red.m && run.f.maxCoeff() > 0) f_pass = run.f;
      IndexSet current;
      if (run.best_threshold) {
        current = run.best_threshold->set;
        note_candidate(current);
      }
      if (current.empty() || red.feasible(current)) break;
      if (round == schedule.max_rounds) break;

      ViolatedGroups bad = violated_groups(red, current);
      if (!bad.any()) break;
      for (Index j : bad.lower)
        w.lower[j] = w.lower[j] == 0 ? gamma0 : w.lower[j] * schedule.growth;
      for (Index j : bad.upper)
        w.upper[j] = w.upper[j] == 0 ? gamma0 : w.upper[j] * schedule.growth;
      if (bad.dist) w.dist = w.dist == 0 ? gamma0 : w.dist * schedule.growth;
    }
  };

  run_continuation(f);

  // Optional second pass from the relaxation's fractional solution; often
  // a good start on instances where the unconstrained profile misleads.
  if (schedule.lp_start) {
    try {
      LpRelaxationResult lp_sol = solve_lp_relaxation(red);
      if (lp_sol.f.maxCoeff() > 0) run_continuation(lp_sol.f);
    } catch (const std::exception&) {
    }
  }

  // Warm start from the best feasible set with gamma above the exactness
  // threshold: the result stays feasible and can only gain density.
  // Iterated until it stops paying off.
  if (schedule.polish && have_feasible) {
    for (int pass = 0; pass < 5; ++pass) {
      double before = best_feasible_density;
      try {
        double need = gamma_threshold(red, best_feasible, theta);
        PenaltyWeights wp = PenaltyWeights::zeros(red);
        wp.theta = theta;
        for (Index j = 0; j < red.num_skills(); ++j) {
          if (red.skill[j].lower > 0) wp.lower[j] = need;
          if (red.skill[j].upper < kInf) wp.upper[j] = need;
        }
        if (!red.violation.empty()) wp.dist = need;
        Vector f_start = Vector::Zero(red.m);
        for (Index v : best_feasible) f_start[v] = 1;
        RatioDcaResult run = ratiodca(red, wp, f_start, cfg);
        absorb(run.trace, next_round + 1 + pass);
        if (run.best_threshold) note_candidate(run.best_threshold->set);
      } catch (const DegenerateRatio&) {
        break;
      } catch (const InvalidInput&) {
        break;
      }
      if (best_feasible_density <= before + 1e-12) break;
    }
  }

  out.reduced_team = have_feasible ? best_feasible : last_set;
  out.solution =
      expand_solution(red, out.reduced_team, inst, norm, dist, "forte");
  return out;
}

}  // namespace gdsp
