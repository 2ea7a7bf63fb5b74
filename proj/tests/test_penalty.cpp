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

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "gdsp/penalty.hpp"
#include "support/random_instances.hpp"

using namespace gdsp;

namespace {

ReducedProblem reduce_plain(const Instance& inst, TaskSpec task) {
  return reduce_subset(inst, normalize_task(inst, task),
                       hop_distance_oracle(inst));
}

ReducedProblem triangle_reduced(double lower, double upper,
                                IndexSet seed = {}) {
  EdgeList edges = {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}};
  Matrix skills(3, 1);
  skills << 1, 1, 0;
  Instance inst(3, edges, Vector::Ones(3), skills, Vector::Zero(3));
  TaskSpec task;
  task.skill_bounds.push_back({0, lower, upper});
  task.seed = std::move(seed);
  return reduce_plain(inst, task);
}

// Path 0-1-2-3 with a hop bound of 2: the single violating pair is (0, 3).
ReducedProblem path_with_violation() {
  Instance inst = Instance::from_edges(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  TaskSpec task;
  task.distance.d0 = 2;
  return reduce_plain(inst, task);
}

IndexSet mask_to_set(std::uint32_t mask) {
  IndexSet set;
  for (Index i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) set.push_back(i);
  return set;
}

// Random reduced problems exercising every constraint family.
ReducedProblem random_reduced(Rng& rng, int n, bool upper_and_distance) {
  testing::InstanceConfig cfg;
  cfg.n = n;
  cfg.unit_weights = rng.next_double() < 0.5;
  Instance inst = testing::random_instance(rng, cfg);
  testing::FeasibleTaskConfig task_cfg;
  task_cfg.with_upper = upper_and_distance;
  task_cfg.with_distance = upper_and_distance;
  auto gen = testing::feasible_task(rng, inst, task_cfg);
  return reduce_plain(inst, gen.task);
}

Vector distinct_point(Rng& rng, Index m) {
  Vector f(m);
  std::vector<Index> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  for (Index i = m - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.next_below(i + 1)]);
  for (Index i = 0; i < m; ++i)
    f[perm[i]] = 0.1 * (i + 1) + 1e-3 * rng.next_double();
  return f;
}

}  // namespace

TEST_CASE("penalty values") {
  ReducedProblem red = triangle_reduced(2, 2);
  PenaltyWeights w = PenaltyWeights::uniform(red, 1.0);
  SUBCASE("empty set pays nothing") { CHECK(penalty(red, w, {}) == 0.0); }
  SUBCASE("one missing unit of a lower bound") {
    CHECK(penalty(red, w, {0}) == doctest::Approx(1.0));
  }
  SUBCASE("feasible set pays nothing") {
    CHECK(penalty(red, w, {0, 1}) == 0.0);
  }
  SUBCASE("violating pair counts ordered") {
    ReducedProblem path = path_with_violation();
    PenaltyWeights wp = PenaltyWeights::uniform(path, 1.0);
    CHECK(penalty(path, wp, {0, 3}) == doctest::Approx(2.0));
  }
}

TEST_CASE("discrete objective") {
  SUBCASE("unconstrained triangle at the full set") {
    ReducedProblem red = triangle_reduced(0, kInf);
    PenaltyWeights w = PenaltyWeights::zeros(red);
    CHECK(discrete_objective(red, w, {0, 1, 2}) == doctest::Approx(0.5));
  }
  SUBCASE("seed fold keeps the inverse-density meaning") {
    ReducedProblem red = triangle_reduced(0, kInf, {0});
    PenaltyWeights w = PenaltyWeights::zeros(red);
    CHECK(discrete_objective(red, w, {0, 1}) == doctest::Approx(0.5));
  }
  SUBCASE("penalty vanishes on feasible sets") {
    ReducedProblem red = triangle_reduced(1, kInf);
    PenaltyWeights w = PenaltyWeights::uniform(red, 3.0);
    CHECK(discrete_objective(red, w, {0, 1}) ==
          doctest::Approx(2.0 / red.assoc_s({0, 1})));
  }
  SUBCASE("isolated set has a degenerate denominator") {
    Instance inst = Instance::from_edges(3, {{0, 1, 1}});
    ReducedProblem red = reduce_plain(inst, {});
    PenaltyWeights w = PenaltyWeights::zeros(red);
    CHECK_THROWS_AS(discrete_objective(red, w, {2}), DegenerateRatio);
    CHECK_THROWS_AS(discrete_objective(red, w, {}), InvalidInput);
  }
}

TEST_CASE("gamma threshold") {
  ReducedProblem red = triangle_reduced(0, kInf);
  IndexSet all = {0, 1, 2};
  double t1 = gamma_threshold(red, all, 1.0);
  CHECK(t1 > 3.0);
  CHECK(t1 == doctest::Approx(3.0).epsilon(1e-5));
  SUBCASE("doubling theta halves the threshold") {
    CHECK(gamma_threshold(red, all, 2.0) == doctest::Approx(t1 / 2));
  }
  SUBCASE("denser reference sets lower the threshold") {
    // {0,1} has density 1 vs 2 at the full triangle.
    CHECK(gamma_threshold(red, {0, 1}, 1.0) > t1);
  }
  SUBCASE("an infeasible reference is rejected") {
    ReducedProblem bounded = triangle_reduced(2, kInf);
    CHECK_THROWS_AS(gamma_threshold(bounded, {2}, 1.0), InvalidInput);
  }
}

TEST_CASE("default theta is one for binary data") {
  CHECK(default_theta(triangle_reduced(2, 2)) == 1.0);
  CHECK(default_theta(path_with_violation()) == 1.0);
  SUBCASE("fractional levels shrink theta") {
    EdgeList edges = {{0, 1, 1}};
    Matrix skills(2, 1);
    skills << 0.5, 1.0;
    Instance inst(2, edges, Vector::Ones(2), skills, Vector::Zero(2));
    TaskSpec task;
    task.skill_bounds.push_back({0, 1.0, kInf});
    ReducedProblem red = reduce_plain(inst, task);
    CHECK(default_theta(red) == doctest::Approx(0.5));
  }
}

TEST_CASE("generic Lovasz extension") {
  SUBCASE("indicator vectors recover the set function") {
    Rng rng(5);
    const Index m = 6;
    std::vector<double> table(1u << m);
    for (auto& v : table) v = rng.next_double() * 4 - 2;
    table[0] = 0;
    auto set_fn = [&table](const IndexSet& set) {
      std::uint32_t mask = 0;
      for (Index v : set) mask |= 1u << v;
      return table[mask];
    };
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      Vector f = Vector::Zero(m);
      for (Index i = 0; i < m; ++i)
        if ((mask >> i) & 1u) f[i] = 1.0;
      CHECK(lovasz_extension(set_fn, f) ==
            doctest::Approx(table[mask]).epsilon(1e-12));
    }
  }
  SUBCASE("the unit function extends to the maximum") {
    auto unit = [](const IndexSet& set) { return set.empty() ? 0.0 : 1.0; };
    Vector f(4);
    f << 0.3, 1.7, 0.2, 0.9;
    CHECK(lovasz_extension(unit, f) == doctest::Approx(1.7));
  }
  SUBCASE("the cut function extends to total variation") {
    // Path 0-1 with unit weight: cut({0}) = cut({1}) = 1.
    auto cut = [](const IndexSet& set) { return set.size() == 1 ? 1.0 : 0.0; };
    Vector f(2);
    f << 0.2, 0.7;
    CHECK(lovasz_extension(cut, f) == doctest::Approx(0.5));
  }
}

TEST_CASE("continuous objective extends the discrete one") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    ReducedProblem red = random_reduced(rng, 5 + rng.next_below(5), trial % 2);
    PenaltyWeights w = trial % 3 == 0
                           ? PenaltyWeights::zeros(red)
                           : PenaltyWeights::uniform(red, 0.75);
    DcParts parts(red, w);
    for (std::uint32_t mask = 1; mask < (1u << red.m); ++mask) {
      IndexSet set = mask_to_set(mask);
      Vector f = Vector::Zero(red.m);
      for (Index v : set) f[v] = 1.0;
      double denom = red.assoc_s(set);
      if (!(denom > 0)) continue;
      CHECK(parts.q(f) ==
            doctest::Approx(discrete_objective(red, w, set)).epsilon(1e-10));
    }
  }
}

TEST_CASE("the objective is scale free") {
  Rng rng(37);
  ReducedProblem red = random_reduced(rng, 7, true);
  PenaltyWeights w = PenaltyWeights::uniform(red, 0.5);
  DcParts parts(red, w);
  for (int trial = 0; trial < 20; ++trial) {
    Vector f(red.m);
    for (Index i = 0; i < red.m; ++i) f[i] = 0.05 + rng.next_double();
    double base = parts.q(f);
    CHECK(parts.q(Vector(2.5 * f)) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("explicit d.c. parts match the generic Lovasz oracle") {
  Rng rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    ReducedProblem red = random_reduced(rng, 4 + rng.next_below(7), true);
    PenaltyWeights w = PenaltyWeights::uniform(red, 0.5 + rng.next_double());
    DcParts parts(red, w);

    auto r1_set = [&](const IndexSet& set) {
      double v = red.vol(parts.rho(), set);
      if (!set.empty()) v += parts.sigma();
      return v;
    };
    auto r2_set = [&](const IndexSet& set) { return pen2_value(red, w, set); };
    auto s1_set = [&](const IndexSet& set) {
      double v = red.vol(red.degree, set) + red.vol(red.d_seed, set);
      if (!set.empty()) v += red.mu_s;
      return v;
    };
    auto s2_set = [&](const IndexSet& set) {
      std::vector<char> in(red.m, 0);
      for (Index v : set) in[v] = 1;
      double cut = 0;
      for (const Edge& e : red.edges)
        if (in[e.u] != in[e.v]) cut += e.w;
      return cut;
    };

    for (int point = 0; point < 8; ++point) {
      Vector f(red.m);
      for (Index i = 0; i < red.m; ++i) f[i] = rng.next_double() * 2;
      CHECK(parts.r1(f) ==
            doctest::Approx(lovasz_extension(r1_set, f)).epsilon(1e-9));
      CHECK(parts.r2(f) ==
            doctest::Approx(lovasz_extension(r2_set, f)).epsilon(1e-9));
      CHECK(parts.s1(f) ==
            doctest::Approx(lovasz_extension(s1_set, f)).epsilon(1e-9));
      CHECK(parts.s2(f) ==
            doctest::Approx(lovasz_extension(s2_set, f)).epsilon(1e-9));
    }
  }
}

TEST_CASE("pen2 is submodular") {
  Rng rng(43);
  for (int trial = 0; trial < 5; ++trial) {
    ReducedProblem red = random_reduced(rng, 6, true);
    PenaltyWeights w = PenaltyWeights::uniform(red, 1.0);
    const std::uint32_t total = 1u << red.m;
    std::vector<double> value(total);
    for (std::uint32_t mask = 0; mask < total; ++mask)
      value[mask] = pen2_value(red, w, mask_to_set(mask));
    for (std::uint32_t a = 0; a < total; ++a)
      for (std::uint32_t b = a; b < total; ++b)
        CHECK(value[a | b] + value[a & b] <= value[a] + value[b] + 1e-9);
  }
}

TEST_CASE("subgradient of S1") {
  SUBCASE("triangle reduced by a single-vertex seed") {
    ReducedProblem red = triangle_reduced(0, kInf, {0});
    Vector f(2);
    f << 0.4, 0.6;
    Vector s = subgrad_s1(red, f);
    CHECK(s[0] == doctest::Approx(3.0));
    CHECK(s[1] == doctest::Approx(3.0));
  }
  SUBCASE("zero mu_s makes it constant in f") {
    ReducedProblem red = triangle_reduced(0, kInf, {0});
    Vector f1(2), f2(2);
    f1 << 0.1, 0.9;
    f2 << 0.9, 0.1;
    CHECK(subgrad_s1(red, f1) == subgrad_s1(red, f2));
  }
  SUBCASE("positive mu_s marks the arg max") {
    // Double edge inside the seed: assoc(S) = 4.
    Instance inst(4, {{0, 1, 2}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}},
                  Vector::Ones(4), Matrix::Zero(4, 0), Vector::Zero(4));
    TaskSpec task;
    task.seed = {0, 1};
    ReducedProblem red = reduce_plain(inst, task);
    REQUIRE(red.mu_s == doctest::Approx(4.0));
    Vector f(2);
    f << 0.1, 0.9;
    Vector base = red.degree + red.d_seed;
    Vector s = subgrad_s1(red, f);
    CHECK(s[0] == doctest::Approx(base[0]));
    CHECK(s[1] == doctest::Approx(base[1] + 4.0));
  }
}

TEST_CASE("subgradient of R2") {
  SUBCASE("upper-bounded binary row") {
    EdgeList edges = {{0, 1, 1}};
    Matrix skills(2, 1);
    skills << 1, 1;
    Instance inst(2, edges, Vector::Ones(2), skills, Vector::Zero(2));
    TaskSpec task;
    task.skill_bounds.push_back({0, 0.0, 1.0});
    ReducedProblem red = reduce_plain(inst, task);
    PenaltyWeights w = PenaltyWeights::uniform(red, 1.0);
    Vector f(2);
    f << 0.3, 0.7;
    Vector r = subgrad_r2(red, w, f);
    CHECK(r[0] == doctest::Approx(0.0));
    CHECK(r[1] == doctest::Approx(1.0));
  }
  SUBCASE("violating pair term") {
    ReducedProblem red = path_with_violation();
    PenaltyWeights w = PenaltyWeights::uniform(red, 1.0);
    Vector f(4);
    f << 0.2, 0.0, 0.0, 0.5;  // pair (0, 3): sign(f_0 - f_3) = -1
    Vector r = subgrad_r2(red, w, f);
    CHECK(r[0] == doctest::Approx(-2.0));
    CHECK(r[3] == doctest::Approx(0.0));
  }
  SUBCASE("zero weights give a zero vector") {
    ReducedProblem red = triangle_reduced(2, 2);
    PenaltyWeights w = PenaltyWeights::zeros(red);
    Vector f(3);
    f << 0.1, 0.5, 0.9;
    CHECK(subgrad_r2(red, w, f).isZero());
  }
}

TEST_CASE("subgradients satisfy the Euler identity") {
  Rng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    ReducedProblem red = random_reduced(rng, 5 + rng.next_below(4), true);
    PenaltyWeights w = PenaltyWeights::uniform(red, 0.8);
    DcParts parts(red, w);
    Vector f = distinct_point(rng, red.m);
    CHECK(subgrad_s1(red, f).dot(f) ==
          doctest::Approx(parts.s1(f)).epsilon(1e-9));
    CHECK(subgrad_r2(red, w, f).dot(f) ==
          doctest::Approx(parts.r2(f)).epsilon(1e-9));
  }
}

TEST_CASE("subgradients match finite differences") {
  Rng rng(53);
  const double h = 1e-6;
  for (int trial = 0; trial < 5; ++trial) {
    ReducedProblem red = random_reduced(rng, 6, true);
    PenaltyWeights w = PenaltyWeights::uniform(red, 1.0);
    DcParts parts(red, w);
    Vector f = distinct_point(rng, red.m);
    Vector s1 = subgrad_s1(red, f);
    Vector r2 = subgrad_r2(red, w, f);
    for (Index i = 0; i < red.m; ++i) {
      Vector up = f, down = f;
      up[i] += h;
      down[i] -= h;
      CHECK(s1[i] == doctest::Approx((parts.s1(up) - parts.s1(down)) / (2 * h))
                         .epsilon(1e-4));
      CHECK(r2[i] == doctest::Approx((parts.r2(up) - parts.r2(down)) / (2 * h))
                         .epsilon(1e-4));
    }
  }
}

TEST_CASE("penalty vanishes exactly on feasible sets") {
  Rng rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    ReducedProblem red = random_reduced(rng, 5 + rng.next_below(5), true);
    PenaltyWeights w = PenaltyWeights::uniform(red, 1.0);
    for (std::uint32_t mask = 0; mask < (1u << red.m); ++mask) {
      IndexSet set = mask_to_set(mask);
      double pen = penalty(red, w, set);
      bool ok = set.empty() || red.feasible(set);
      CHECK((pen == 0.0) == ok);
    }
  }
}

TEST_CASE("numerator and denominator stay non-negative") {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    ReducedProblem red = random_reduced(rng, 6, true);
    PenaltyWeights w = PenaltyWeights::uniform(red, 1.3);
    DcParts parts(red, w);
    for (int point = 0; point < 20; ++point) {
      Vector f(red.m);
      for (Index i = 0; i < red.m; ++i) f[i] = rng.next_double();
      CHECK(parts.r1(f) - parts.r2(f) >= -1e-9);
      CHECK(parts.s1(f) - parts.s2(f) >= -1e-9);
    }
  }
}

TEST_CASE("exact penalty makes every minimizer feasible") {
  Rng rng(67);
  for (int trial = 0; trial < 8; ++trial) {
    testing::InstanceConfig cfg;
    cfg.n = 5 + static_cast<int>(rng.next_below(4));
    Instance inst = testing::random_instance(rng, cfg);
    testing::FeasibleTaskConfig task_cfg;
    task_cfg.with_upper = true;
    task_cfg.with_distance = trial % 2 == 1;
    auto gen = testing::feasible_task(rng, inst, task_cfg);
    ReducedProblem red = reduce_plain(inst, gen.task);
    double gamma = gamma_threshold(red, gen.witness, default_theta(red));
    PenaltyWeights w = PenaltyWeights::uniform(red, gamma);

    double best = kInf;
    IndexSet best_set;
    for (std::uint32_t mask = 1; mask < (1u << red.m); ++mask) {
      IndexSet set = mask_to_set(mask);
      if (!(red.assoc_s(set) > 0)) continue;
      double obj = discrete_objective(red, w, set);
      if (obj < best) {
        best = obj;
        best_set = set;
      }
    }
    REQUIRE(!best_set.empty());
    CHECK(red.feasible(best_set));
  }
}
