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

#ifndef GDSP_IO_HPP
#define GDSP_IO_HPP

#include <string>

#include "gdsp/instance.hpp"
#include "gdsp/metrics.hpp"
#include "gdsp/reduction.hpp"

namespace gdsp {

/// Files referenced by a solve: the graph is required, everything else
/// optional. All loaders throw InvalidInput with file:line diagnostics.
struct InstanceFiles {
  std::string graph;    // TSV: u <TAB> v <TAB> w (undirected, duplicates sum)
  std::string skills;   // TSV: vertex <TAB> skill <TAB> level
  std::string weights;  // TSV: vertex <TAB> g (default 1)
  std::string costs;    // TSV: vertex <TAB> cost (default 0)
};

Instance load_instance(const InstanceFiles& files);

/// Task JSON:
///   { "skills": [{"index": j, "lower": k, "upper": l}, ...],
///     "seed": [ids], "size_bound": b, "budget": {"B": x},
///     "costs_file": "...",
///     "distance": {"d0": d, "mode": "hops"|"matrix", "matrix_file": "..."} }
/// Absent upper bounds mean +inf; absent blocks disable the constraint.
/// A costs_file inside the task overrides the instance costs; the caller
/// reloads the instance accordingly via `task_costs_file`.
TaskSpec load_task_json(const std::string& path, std::string* costs_file_out = nullptr);

/// Distance oracle from the task's distance block (hop counts by default).
DistanceOracle make_distance_oracle(const Instance& inst, const TaskSpec& task);

RankTable load_ranks_tsv(const std::string& path);

/// Versioned solution JSON (schema 1), deterministic for fixed inputs.
std::string solution_to_json(const TeamSolution& sol, const Instance& inst);

}  // namespace gdsp

#endif  // GDSP_IO_HPP
