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

#include "gdsp/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gdsp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, int line, const std::string& msg) {
  throw InvalidInput(path + ":" + std::to_string(line) + ": " + msg);
}

// Streams non-empty, non-comment lines with their numbers.
template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    fn(number, line);
  }
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (ss >> field) fields.push_back(field);
  return fields;
}

double parse_number(const std::string& path, int line, const std::string& s) {
  try {
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) fail(path, line, "malformed number '" + s + "'");
    return v;
  } catch (const std::exception&) {
    fail(path, line, "malformed number '" + s + "'");
  }
}

Index parse_id(const std::string& path, int line, const std::string& s) {
  double v = parse_number(path, line, s);
  if (v < 0 || v != std::floor(v))
    fail(path, line, "expected a non-negative integer id, got '" + s + "'");
  return static_cast<Index>(v);
}

}  // namespace

Instance load_instance(const InstanceFiles& files) {
  EdgeList edges;
  Index max_id = -1;
  for_each_line(files.graph, [&](int line, const std::string& text) {
    auto fields = split_fields(text);
    if (fields.size() != 3)
      fail(files.graph, line, "expected 'u v w' (3 fields), got " +
                                  std::to_string(fields.size()));
    Index u = parse_id(files.graph, line, fields[0]);
    Index v = parse_id(files.graph, line, fields[1]);
    double w = parse_number(files.graph, line, fields[2]);
    if (u == v) fail(files.graph, line, "self-loops are not allowed");
    if (w < 0) fail(files.graph, line, "negative edge weight");
    edges.push_back({u, v, w});
    max_id = std::max({max_id, u, v});
  });

  struct Triplet {
    Index vertex;
    Index skill;
    double level;
  };
  std::vector<Triplet> skill_entries;
  Index max_skill = -1;
  if (!files.skills.empty()) {
    for_each_line(files.skills, [&](int line, const std::string& text) {
      auto fields = split_fields(text);
      if (fields.size() != 3)
        fail(files.skills, line, "expected 'vertex skill level' (3 fields)");
      Index v = parse_id(files.skills, line, fields[0]);
      Index s = parse_id(files.skills, line, fields[1]);
      double level = parse_number(files.skills, line, fields[2]);
      if (level < 0) fail(files.skills, line, "negative skill level");
      skill_entries.push_back({v, s, level});
      max_id = std::max(max_id, v);
      max_skill = std::max(max_skill, s);
    });
  }

  auto load_per_vertex = [&max_id](const std::string& path,
                                   std::vector<std::pair<Index, double>>& out) {
    for_each_line(path, [&](int line, const std::string& text) {
      auto fields = split_fields(text);
      if (fields.size() != 2)
        fail(path, line, "expected 'vertex value' (2 fields)");
      Index v = parse_id(path, line, fields[0]);
      double value = parse_number(path, line, fields[1]);
      out.emplace_back(v, value);
      max_id = std::max(max_id, v);
    });
  };
  std::vector<std::pair<Index, double>> weight_entries, cost_entries;
  if (!files.weights.empty()) load_per_vertex(files.weights, weight_entries);
  if (!files.costs.empty()) load_per_vertex(files.costs, cost_entries);

  const Index n = max_id + 1;
  if (n <= 0) throw InvalidInput(files.graph + ": graph has no vertices");
  Matrix skills = Matrix::Zero(n, max_skill + 1);
  for (const Triplet& t : skill_entries) skills(t.vertex, t.skill) += t.level;
  Vector g = Vector::Ones(n);
  for (const auto& [v, value] : weight_entries) g[v] = value;
  Vector costs = Vector::Zero(n);
  for (const auto& [v, value] : cost_entries) costs[v] = value;
  return Instance(n, std::move(edges), std::move(g), std::move(skills),
                  std::move(costs));
}

TaskSpec load_task_json(const std::string& path, std::string* costs_file_out) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw InvalidInput(path + ": " + err.what());
  }

  TaskSpec task;
  try {
    if (doc.contains("skills")) {
      for (const auto& entry : doc.at("skills")) {
        SkillBound b;
        b.skill = entry.at("index").get<Index>();
        b.lower = entry.value("lower", 0.0);
        if (entry.contains("upper") && !entry.at("upper").is_null())
          b.upper = entry.at("upper").get<double>();
        task.skill_bounds.push_back(b);
      }
    }
    if (doc.contains("seed")) {
      for (const auto& id : doc.at("seed"))
        task.seed.push_back(id.get<Index>());
      std::sort(task.seed.begin(), task.seed.end());
      task.seed.erase(std::unique(task.seed.begin(), task.seed.end()),
                      task.seed.end());
    }
    if (doc.contains("size_bound") && !doc.at("size_bound").is_null())
      task.size_bound = doc.at("size_bound").get<double>();
    if (doc.contains("budget") && !doc.at("budget").is_null())
      task.budget = doc.at("budget").at("B").get<double>();
    if (costs_file_out != nullptr)
      *costs_file_out = doc.value("costs_file", std::string());
    if (doc.contains("distance") && !doc.at("distance").is_null()) {
      const auto& dist = doc.at("distance");
      task.distance.d0 = dist.value("d0", kInf);
      std::string mode = dist.value("mode", std::string("hops"));
      if (mode == "matrix") {
        task.distance.use_matrix = true;
        task.distance.matrix_file = dist.at("matrix_file").get<std::string>();
      } else if (mode != "hops") {
        throw InvalidInput(path + ": unknown distance mode '" + mode + "'");
      }
    }
  } catch (const json::exception& err) {
    throw InvalidInput(path + ": " + err.what());
  }
  return task;
}

DistanceOracle make_distance_oracle(const Instance& inst, const TaskSpec& task) {
  if (!task.distance.use_matrix) return hop_distance_oracle(inst);
  const std::string& path = task.distance.matrix_file;
  const Index n = inst.num_vertices();
  Matrix dist = Matrix::Zero(n, n);
  Index row = 0;
  for_each_line(path, [&](int line, const std::string& text) {
    if (row >= n) fail(path, line, "more rows than vertices");
    auto fields = split_fields(text);
    if (static_cast<Index>(fields.size()) != n)
      fail(path, line, "expected " + std::to_string(n) + " entries");
    for (Index j = 0; j < n; ++j) {
      if (fields[j] == "inf") {
        dist(row, j) = kInf;
        continue;
      }
      double v = parse_number(path, line, fields[j]);
      if (v < 0) fail(path, line, "distances must be non-negative");
      dist(row, j) = v;
    }
    ++row;
  });
  if (row != n)
    throw InvalidInput(path + ": expected " + std::to_string(n) + " rows, got " +
                       std::to_string(row));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (dist(i, j) != dist(j, i))
        throw InvalidInput(path + ": distance matrix is not symmetric");
  return matrix_distance_oracle(std::move(dist));
}

RankTable load_ranks_tsv(const std::string& path) {
  RankTable table;
  for_each_line(path, [&](int line, const std::string& text) {
    auto fields = split_fields(text);
    if (fields.size() != 2) fail(path, line, "expected 'vertex rank' (2 fields)");
    Index v = parse_id(path, line, fields[0]);
    double rank = parse_number(path, line, fields[1]);
    if (rank < 1) fail(path, line, "ranks must be >= 1");
    table.rank[v] = rank;
  });
  return table;
}

std::string solution_to_json(const TeamSolution& sol, const Instance& inst) {
  json doc;
  doc["schema"] = 1;
  doc["team"] = sol.team;
  doc["density"] = sol.density;
  doc["feasible"] = sol.feasible;
  doc["provenance"] = sol.provenance;
  if (sol.has_lp_bound()) doc["lp_bound"] = sol.lp_bound;
  json slack = json::array();
  for (const auto& entry : sol.slack.entries) {
    slack.push_back({{"constraint", entry.name},
                     {"value", entry.value},
                     {"bound", entry.bound},
                     {"slack", entry.slack}});
  }
  doc["slack"] = slack;
  if (!inst.labels().empty()) {
    json names = json::array();
    for (Index v : sol.team) names.push_back(inst.labels()[v]);
    doc["members"] = names;
  }
  return doc.dump(2) + "\n";
}

}  // namespace gdsp
