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

#ifndef GDSP_BENCH_HPP
#define GDSP_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gdsp/instance.hpp"
#include "gdsp/metrics.hpp"
#include "gdsp/ratiodca.hpp"

namespace gdsp {

struct BenchRow {
  std::uint64_t seed = 0;
  int k = 0;
  std::string method;
  double density = 0;
  Index team_size = 0;
  double runtime_ms = 0;
  double lp_bound = 0;
  double gap = 0;          // density / lp_bound
  bool feasible = false;
  std::optional<double> air;
};

struct BenchOptions {
  std::vector<int> ks = {3, 8, 13, 18, 23, 28};
  int seeds = 10;
  std::vector<std::string> methods = {"forte"};  // forte | greedy | lpfeas
  std::uint64_t seed_base = 0;
  bool zero_runtime = false;  // report 0 ms; for byte-stable golden output
  bool with_lp = true;        // solve the relaxation per task for the bound
};

/// Random-task sweep over the given skill sizes; one row per
/// (seed, k, method), in that order.
std::vector<BenchRow> run_bench(const Instance& inst, const RankTable* ranks,
                                const BenchOptions& options,
                                const GammaSchedule& schedule,
                                const RatioDcaConfig& cfg);

/// CSV: seed,k,method,density,size,runtime_ms,lp_bound,gap,feasible,air
void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& os);

}  // namespace gdsp

#endif  // GDSP_BENCH_HPP
