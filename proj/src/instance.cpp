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

#include "gdsp/instance.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>

namespace gdsp {

namespace {

void check_set(const IndexSet& set, Index n, const char* what) {
  Index prev = -1;
  for (Index v : set) {
    if (v < 0 || v >= n) throw InvalidInput(std::string(what) + ": vertex out of range");
    if (v <= prev) throw InvalidInput(std::string(what) + ": set not sorted/unique");
    prev = v;
  }
}

}  // namespace

Instance::Instance(Index n, EdgeList edges, Vector g, Matrix skills,
                   Vector costs, std::vector<std::string> labels)
    : n_(n),
      g_(std::move(g)),
      skills_(std::move(skills)),
      costs_(std::move(costs)),
      labels_(std::move(labels)) {
  if (n_ < 0) throw InvalidInput("negative vertex count");
  if (g_.size() == 0) g_ = Vector::Ones(n_);
  if (costs_.size() == 0) costs_ = Vector::Zero(n_);
  if (skills_.size() == 0) skills_ = Matrix::Zero(n_, 0);
  if (g_.size() != n_) throw InvalidInput("vertex weight vector has wrong length");
  if (costs_.size() != n_) throw InvalidInput("cost vector has wrong length");
  if (skills_.rows() != n_) throw InvalidInput("skill matrix has wrong row count");
  if (!labels_.empty() && static_cast<Index>(labels_.size()) != n_)
    throw InvalidInput("label list has wrong length");
  for (Index i = 0; i < n_; ++i) {
    if (!(g_[i] > 0)) throw InvalidInput("vertex weights must be positive");
    if (costs_[i] < 0) throw InvalidInput("costs must be non-negative");
  }
  if ((skills_.array() < 0).any()) throw InvalidInput("skill levels must be non-negative");

  // Merge duplicate edges (either orientation), reject self-loops.
  std::map<std::pair<Index, Index>, double> merged;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
      throw InvalidInput("edge endpoint out of range");
    if (e.u == e.v) throw InvalidInput("self-loops are not allowed");
    if (e.w < 0) throw InvalidInput("edge weights must be non-negative");
    auto key = std::minmax(e.u, e.v);
    merged[key] += e.w;
  }
  edges_.reserve(merged.size());
  for (const auto& [key, w] : merged) {
    if (w > 0) edges_.push_back({key.first, key.second, w});
  }

  degree_ = Vector::Zero(n_);
  adj_.resize(n_);
  for (const Edge& e : edges_) {
    degree_[e.u] += e.w;
    degree_[e.v] += e.w;
    adj_[e.u].emplace_back(e.v, e.w);
    adj_[e.v].emplace_back(e.u, e.w);
  }
}

Instance Instance::from_edges(Index n, EdgeList edges) {
  return Instance(n, std::move(edges), Vector::Ones(n), Matrix::Zero(n, 0),
                  Vector::Zero(n));
}

double Instance::assoc(const IndexSet& set) const {
  check_set(set, n_, "assoc");
  std::vector<char> in(n_, 0);
  for (Index v : set) in[v] = 1;
  double total = 0;
  for (Index v : set)
    for (const auto& [u, w] : adj_[v])
      if (in[u]) total += w;  // ordered pairs: each edge seen from both ends
  return total;
}

double Instance::vol(const Vector& h, const IndexSet& set) const {
  check_set(set, n_, "vol");
  double total = 0;
  for (Index v : set) total += h[v];
  return total;
}

double Instance::cut(const IndexSet& a, const IndexSet& b) const {
  check_set(a, n_, "cut");
  check_set(b, n_, "cut");
  std::vector<char> in_b(n_, 0);
  for (Index v : b) in_b[v] = 1;
  double total = 0;
  for (Index v : a)
    for (const auto& [u, w] : adj_[v])
      if (in_b[u]) total += w;
  return total;
}

Vector Instance::hop_distances(Index source) const {
  if (source < 0 || source >= n_) throw InvalidInput("BFS source out of range");
  Vector dist = Vector::Constant(n_, kInf);
  dist[source] = 0;
  std::deque<Index> queue{source};
  while (!queue.empty()) {
    Index v = queue.front();
    queue.pop_front();
    for (const auto& [u, w] : adj_[v]) {
      (void)w;
      if (dist[u] == kInf) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

DistanceOracle hop_distance_oracle(const Instance& inst) {
  // The closure owns an unweighted adjacency snapshot so it stays valid
  // independently of the instance's lifetime; BFS rows are cached lazily.
  struct State {
    std::vector<std::vector<Index>> adj;
    std::map<Index, std::vector<double>> cache;
  };
  auto state = std::make_shared<State>();
  state->adj.resize(inst.num_vertices());
  for (const Edge& e : inst.edges()) {
    state->adj[e.u].push_back(e.v);
    state->adj[e.v].push_back(e.u);
  }
  return [state](Index u, Index v) {
    if (u == v) return 0.0;
    auto it = state->cache.find(u);
    if (it == state->cache.end()) {
      std::vector<double> dist(state->adj.size(), kInf);
      dist[u] = 0;
      std::deque<Index> queue{u};
      while (!queue.empty()) {
        Index x = queue.front();
        queue.pop_front();
        for (Index y : state->adj[x]) {
          if (dist[y] == kInf) {
            dist[y] = dist[x] + 1;
            queue.push_back(y);
          }
        }
      }
      it = state->cache.emplace(u, std::move(dist)).first;
    }
    return it->second[v];
  };
}

DistanceOracle matrix_distance_oracle(Matrix dist) {
  auto held = std::make_shared<Matrix>(std::move(dist));
  return [held](Index u, Index v) { return (*held)(u, v); };
}

Vector TaskSpec::skill_column(const Instance& inst, Index j) const {
  const Index p = inst.num_skills();
  if (j < p) return inst.skills().col(j);
  const Index extra = j - p;
  if (extra < 0 || extra >= static_cast<Index>(extra_skills.size()))
    throw InvalidInput("skill index out of range");
  return extra_skills[extra];
}

void TaskSpec::validate(const Instance& inst) const {
  const Index total_skills =
      inst.num_skills() + static_cast<Index>(extra_skills.size());
  for (const SkillBound& b : skill_bounds) {
    if (b.skill < 0 || b.skill >= total_skills)
      throw InvalidInput("skill bound references unknown skill");
    if (b.lower < 0 || b.lower > b.upper)
      throw InvalidInput("skill bounds must satisfy 0 <= lower <= upper");
  }
  check_set(seed, inst.num_vertices(), "seed");
  if (size_bound < kInf && size_bound < static_cast<double>(seed.size()))
    throw InvalidInput("size bound smaller than the seed set");
  if (distance.active() && distance.d0 < 0)
    throw InvalidInput("distance bound must be non-negative");
}

double generalized_density(const Instance& inst, const IndexSet& team) {
  if (team.empty()) throw InvalidInput("empty team");
  double volume = inst.vol(inst.vertex_weights(), team);
  return inst.assoc(team) / volume;
}

AssocTerms assoc_terms(const Instance& inst, const IndexSet& seed) {
  check_set(seed, inst.num_vertices(), "seed");
  AssocTerms out;
  out.mu_s = inst.assoc(seed);
  out.nu_s = inst.vol(inst.vertex_weights(), seed);
  out.d_s = Vector::Zero(inst.num_vertices());
  std::vector<char> in_seed(inst.num_vertices(), 0);
  for (Index v : seed) in_seed[v] = 1;
  for (Index i = 0; i < inst.num_vertices(); ++i) {
    if (in_seed[i]) continue;
    out.complement.push_back(i);
    for (const auto& [u, w] : inst.neighbors(i))
      if (in_seed[u]) out.d_s[i] += w;
  }
  return out;
}

TaskSpec normalize_task(const Instance& inst, TaskSpec task) {
  task.validate(inst);
  const Index p = inst.num_skills();
  if (task.size_bound < kInf) {
    Index col = p + static_cast<Index>(task.extra_skills.size());
    task.extra_skills.push_back(Vector::Ones(inst.num_vertices()));
    task.skill_bounds.push_back({col, 0.0, task.size_bound});
    task.size_bound = kInf;
  }
  if (task.budget < kInf) {
    Index col = p + static_cast<Index>(task.extra_skills.size());
    task.extra_skills.push_back(inst.costs());
    task.skill_bounds.push_back({col, 0.0, task.budget});
    task.budget = kInf;
  }
  return task;
}

}  // namespace gdsp
