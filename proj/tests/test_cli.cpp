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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
  std::string stderr_text;
};

// Executes the CLI with the given arguments, capturing both streams.
RunResult run_cli(const std::string& args, const fs::path& dir) {
  fs::path out = dir / "stdout.txt";
  fs::path err = dir / "stderr.txt";
  std::string command = std::string(GDSP_CLI_PATH) + " " + args + " > " +
                        out.string() + " 2> " + err.string();
  int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  result.stdout_text = slurp(out);
  result.stderr_text = slurp(err);
  return result;
}

class Fixture {
 public:
  Fixture() {
    dir_ = fs::temp_directory_path() /
           ("gdsp_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter_++));
    fs::create_directories(dir_);
  }
  ~Fixture() { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& content) {
    fs::path p = dir_ / name;
    std::ofstream out(p);
    out << content;
    return p;
  }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  static inline int counter_ = 0;
};

const char kTriangleGraph[] = "0\t1\t1\n1\t2\t1\n0\t2\t1\n";
const char kTriangleSkills[] = "0\t0\t1\n1\t0\t1\n";

}  // namespace

TEST_CASE("solve returns the dense triangle") {
  Fixture fx;
  auto graph = fx.write("g.tsv", kTriangleGraph);
  auto skills = fx.write("s.tsv", kTriangleSkills);
  auto task = fx.write("t.json", R"({"skills": []})");
  RunResult res = run_cli("solve --graph " + graph.string() + " --skills " +
                              skills.string() + " --task " + task.string(),
                          fx.dir());
  REQUIRE(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.stdout_text);
  CHECK(doc["schema"] == 1);
  CHECK(doc["team"] == nlohmann::json::array({0, 1, 2}));
  CHECK(doc["density"] == doctest::Approx(2.0));
  CHECK(doc["feasible"] == true);
}

TEST_CASE("solve output is byte-identical across runs") {
  Fixture fx;
  auto graph = fx.write("g.tsv", kTriangleGraph);
  auto skills = fx.write("s.tsv", kTriangleSkills);
  auto task = fx.write("t.json",
                       R"({"skills": [{"index": 0, "lower": 2}]})");
  std::string args = "solve --graph " + graph.string() + " --skills " +
                     skills.string() + " --task " + task.string() +
                     " --lp-bound";
  RunResult first = run_cli(args, fx.dir());
  RunResult second = run_cli(args, fx.dir());
  REQUIRE(first.exit_code == 0);
  CHECK(first.stdout_text == second.stdout_text);
}

TEST_CASE("solve writes a trace") {
  Fixture fx;
  auto graph = fx.write("g.tsv", kTriangleGraph);
  auto skills = fx.write("s.tsv", kTriangleSkills);
  auto task = fx.write("t.json", R"({"skills": [{"index": 0, "lower": 2}]})");
  fs::path trace = fx.dir() / "trace.csv";
  RunResult res = run_cli("solve --graph " + graph.string() + " --skills " +
                              skills.string() + " --task " + task.string() +
                              " --trace " + trace.string(),
                          fx.dir());
  REQUIRE(res.exit_code == 0);
  std::ifstream in(trace);
  std::string header;
  std::getline(in, header);
  CHECK(header == "round,gamma,outer_iter,lambda,feasible,team_size");
  std::string row;
  CHECK(std::getline(in, row));
}

TEST_CASE("infeasible tasks exit with code 2") {
  Fixture fx;
  auto graph = fx.write("g.tsv", kTriangleGraph);
  auto skills = fx.write("s.tsv", kTriangleSkills);
  auto task = fx.write("t.json", R"({"skills": [{"index": 0, "lower": 3}]})");
  RunResult res = run_cli("solve --graph " + graph.string() + " --skills " +
                              skills.string() + " --task " + task.string(),
                          fx.dir());
  CHECK(res.exit_code == 2);
}

TEST_CASE("oracle refuses oversized universes") {
  Fixture fx;
  std::ostringstream graph_text;
  for (int i = 0; i + 1 < 25; ++i)
    graph_text << i << '\t' << i + 1 << "\t1\n";
  auto graph = fx.write("g.tsv", graph_text.str());
  auto task = fx.write("t.json", R"({"skills": []})");
  RunResult res = run_cli("oracle --graph " + graph.string() + " --task " +
                              task.string(),
                          fx.dir());
  CHECK(res.exit_code == 1);
  CHECK(res.stderr_text.find("refused") != std::string::npos);
}

TEST_CASE("oracle agrees with solve on the triangle") {
  Fixture fx;
  auto graph = fx.write("g.tsv", kTriangleGraph);
  auto task = fx.write("t.json", R"({})");
  RunResult res = run_cli("oracle --graph " + graph.string() + " --task " +
                              task.string(),
                          fx.dir());
  REQUIRE(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.stdout_text);
  CHECK(doc["team"] == nlohmann::json::array({0, 1, 2}));
  CHECK(doc["density"] == doctest::Approx(2.0));
}

TEST_CASE("malformed graph files carry line numbers") {
  Fixture fx;
  auto graph = fx.write("g.tsv", "0\t1\t1\nbroken line\n");
  auto task = fx.write("t.json", R"({})");
  RunResult res = run_cli("solve --graph " + graph.string() + " --task " +
                              task.string(),
                          fx.dir());
  CHECK(res.exit_code == 1);
  CHECK(res.stderr_text.find("g.tsv:2") != std::string::npos);
}

TEST_CASE("self-loops are rejected at load time") {
  Fixture fx;
  auto graph = fx.write("g.tsv", "0\t0\t2\n");
  auto task = fx.write("t.json", R"({})");
  RunResult res = run_cli("solve --graph " + graph.string() + " --task " +
                              task.string(),
                          fx.dir());
  CHECK(res.exit_code == 1);
  CHECK(res.stderr_text.find("self-loop") != std::string::npos);
}

TEST_CASE("lp subcommand reports the bound and a rounded team") {
  Fixture fx;
  auto graph = fx.write("g.tsv", kTriangleGraph);
  auto skills = fx.write("s.tsv", kTriangleSkills);
  auto task = fx.write("t.json", R"({"skills": [{"index": 0, "lower": 2}]})");
  fs::path dump = fx.dir() / "lp.txt";
  RunResult res = run_cli("lp --graph " + graph.string() + " --skills " +
                              skills.string() + " --task " + task.string() +
                              " --round --dump " + dump.string(),
                          fx.dir());
  REQUIRE(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.stdout_text);
  CHECK(doc["lp_bound"].get<double>() >= 2.0 - 1e-7);
  CHECK(doc["feasible"] == true);
  std::ifstream in(dump);
  std::string first;
  std::getline(in, first);
  CHECK(first.rfind("max", 0) == 0);
}

TEST_CASE("greedy subcommand solves lower-bound tasks") {
  Fixture fx;
  auto graph = fx.write("g.tsv", kTriangleGraph);
  auto skills = fx.write("s.tsv", kTriangleSkills);
  auto task = fx.write("t.json", R"({"skills": [{"index": 0, "lower": 2}]})");
  RunResult res = run_cli("greedy --graph " + graph.string() + " --skills " +
                              skills.string() + " --task " + task.string(),
                          fx.dir());
  REQUIRE(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.stdout_text);
  CHECK(doc["feasible"] == true);
}

TEST_CASE("budget tasks pull costs from the referenced file") {
  Fixture fx;
  auto graph = fx.write("g.tsv", kTriangleGraph);
  // Vertex 2 is priced out of any budget-2 team.
  fx.write("c.tsv", "0\t1\n1\t1\n2\t5\n");
  auto task = fx.write("t.json",
                       R"({"budget": {"B": 2}, "costs_file": ")" +
                           (fx.dir() / "c.tsv").string() + R"("})");
  RunResult res = run_cli("solve --graph " + graph.string() + " --task " +
                              task.string(),
                          fx.dir());
  REQUIRE(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.stdout_text);
  CHECK(doc["team"] == nlohmann::json::array({0, 1}));
  CHECK(doc["feasible"] == true);
}

TEST_CASE("random-task is reproducible") {
  Fixture fx;
  RunResult a = run_cli("random-task --k 3 --p 4 --seed 11", fx.dir());
  RunResult b = run_cli("random-task --k 3 --p 4 --seed 11", fx.dir());
  REQUIRE(a.exit_code == 0);
  CHECK(a.stdout_text == b.stdout_text);
  auto doc = nlohmann::json::parse(a.stdout_text);
  double total = 0;
  for (const auto& entry : doc["skills"]) total += entry["lower"].get<double>();
  CHECK(total == 3.0);
}

TEST_CASE("bench emits one row per seed and stays sound") {
  Fixture fx;
  auto graph = fx.write("g.tsv", kTriangleGraph);
  auto skills = fx.write("s.tsv",
                         "0\t0\t1\n1\t0\t1\n2\t1\t1\n0\t1\t1\n");
  std::string args = "bench --graph " + graph.string() + " --skills " +
                     skills.string() + " --seeds 10 --k 3 --zero-runtime";
  RunResult res = run_cli(args, fx.dir());
  REQUIRE(res.exit_code == 0);
  std::istringstream lines(res.stdout_text);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "seed,k,method,density,size,runtime_ms,lp_bound,gap,feasible,air");
  int rows = 0;
  std::string row;
  while (std::getline(lines, row)) {
    if (row.empty()) continue;
    ++rows;
    // feasible rows must satisfy density <= lp_bound + tolerance
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      size_t comma = row.find(',', start);
      fields.push_back(row.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    REQUIRE(fields.size() == 10);
    if (fields[8] == "1" && !fields[6].empty())
      CHECK(std::stod(fields[3]) <= std::stod(fields[6]) + 1e-7);
  }
  CHECK(rows == 10);

  RunResult again = run_cli(args, fx.dir());
  CHECK(res.stdout_text == again.stdout_text);
}

TEST_CASE("matrix distances steer the solver away from far pairs") {
  Fixture fx;
  auto graph = fx.write("g.tsv", kTriangleGraph);
  // Vertices 0 and 1 are declared far apart despite the edge between them.
  auto matrix = fx.write("d.tsv", "0 9 1\n9 0 1\n1 1 0\n");
  auto task = fx.write("t.json", R"({"distance": {"d0": 2, "mode": "matrix",
      "matrix_file": ")" + matrix.string() + R"("}})");
  RunResult res = run_cli("solve --graph " + graph.string() + " --task " +
                              task.string(),
                          fx.dir());
  REQUIRE(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.stdout_text);
  auto team = doc["team"].get<std::vector<int>>();
  bool has0 = std::count(team.begin(), team.end(), 0) > 0;
  bool has1 = std::count(team.begin(), team.end(), 1) > 0;
  CHECK_FALSE((has0 && has1));
  CHECK(doc["feasible"] == true);
}

TEST_CASE("air subcommand reproduces the reference values") {
  Fixture fx;
  auto ranks = fx.write("r.tsv", "0\t54\n1\t279\n");
  RunResult res = run_cli("air --ranks " + ranks.string() + " --team 0,1",
                          fx.dir());
  REQUIRE(res.exit_code == 0);
  CHECK(std::stod(res.stdout_text) == doctest::Approx(11.1).epsilon(0.005));
}
