// Copyright 2026 The Softground Authors.
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


#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "softground/dataset.hpp"

using namespace softground;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  return fs::temp_directory_path() / ("softground_dataset_" + name);
}

}  // namespace

TEST_CASE("task names") {
  for (TaskKind k : {TaskKind::kHwf, TaskKind::kSudoku, TaskKind::kSdsp}) {
    CHECK(parse_task_kind(to_string(k)) == k);
  }
  CHECK_THROWS(parse_task_kind("mnist"));
}

TEST_CASE("generation is reproducible and round-trips bit-exactly") {
  const DataParams params;
  for (TaskKind k : {TaskKind::kHwf, TaskKind::kSudoku, TaskKind::kSdsp}) {
    const auto a = generate_dataset(k, 40, 0, 5, 1, params);
    const auto b = generate_dataset(k, 40, 0, 5, 1, params);
    const fs::path pa = scratch("a.jsonl"), pb = scratch("b.jsonl"), pc = scratch("c.jsonl");
    write_dataset(pa, a);
    write_dataset(pb, b);
    CHECK(slurp(pa) == slurp(pb));

    const auto back = read_dataset(pa);
    REQUIRE(back.size() == a.size());
    write_dataset(pc, back);
    CHECK(slurp(pc) == slurp(pa));
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(back[i].id == i);
      CHECK(back[i].task() == k);
      CHECK(to_json_line(back[i]) == to_json_line(a[i]));
    }
    // A different seed gives a different file.
    write_dataset(pb, generate_dataset(k, 40, 0, 6, 1, params));
    CHECK(slurp(pb) != slurp(pa));
    for (const auto& p : {pa, pb, pc}) fs::remove(p);
  }
}

TEST_CASE("splits are independent of each other") {
  const DataParams params;
  const auto whole = generate_dataset(TaskKind::kHwf, 30, 0, 2, 1, params);
  const auto tail = generate_dataset(TaskKind::kHwf, 10, 20, 2, 1, params);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(to_json_line(tail[i]) == to_json_line(whole[20 + i]));
  }
}

TEST_CASE("generated examples satisfy their constraints") {
  const DataParams params;
  for (const Record& r : generate_dataset(TaskKind::kHwf, 300, 0, 1, 1, params)) {
    const auto& inst = std::get<hwf::Instance>(r.instance);
    CHECK(inst.length == 7);
    CHECK(hwf::eval_expr(inst.gold) == inst.target);
    CHECK(hwf::initial_solution(inst.target).has_value());
  }
  for (const Record& r : generate_dataset(TaskKind::kSudoku, 300, 0, 1, 1, params)) {
    const auto& inst = std::get<sudoku::Instance>(r.instance);
    CHECK(sudoku::valid(inst.gold));
    CHECK(inst.clues.size() == params.sudoku_clues);
  }
  for (const Record& r : generate_dataset(TaskKind::kSdsp, 100, 0, 1, 1, params)) {
    const auto& inst = std::get<sdsp::Instance>(r.instance);
    CHECK(inst.graph.size() == params.sdsp_nodes);
    CHECK(inst.graph.connected());
    CHECK(sdsp::feasible(inst, inst.exact));
  }
}

TEST_CASE("malformed records are rejected") {
  CHECK_THROWS_AS(parse_record("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_record(R"({"task":"hwf","id":0})"), std::invalid_argument);
  CHECK_THROWS(parse_record(
      R"({"task":"hwf","id":0,"featurizer_seed":1,"gold":"4*9+","target":"42/1"})"));
  CHECK_THROWS(parse_record(
      R"({"task":"sudoku","id":0,"featurizer_seed":1,"gold":"2431/3142/4213/1324","clues":[16]})"));
  CHECK_THROWS(read_dataset("/nonexistent/softground.jsonl"));
  const Record ok = parse_record(
      R"({"task":"hwf","id":3,"featurizer_seed":1,"gold":"4*9+3+3","target":"42/1"})");
  CHECK(ok.id == 3);
  CHECK(std::get<hwf::Instance>(ok.instance).target == hwf::Rational(42));
}

TEST_CASE("perception inputs") {
  const DataParams params;
  const FeaturizerParams fp;
  const auto hwf_data = generate_dataset(TaskKind::kHwf, 5, 0, 1, 4, params);
  const Featurizer f = make_featurizer(TaskKind::kHwf, 4, fp);
  CHECK(f.num_classes() == hwf::kNumClasses);
  const auto a = perceive(hwf_data[0], f), b = perceive(hwf_data[0], f);
  CHECK(a.features == b.features);
  CHECK(a.positions.size() == 7);
  CHECK(perceive(hwf_data[1], f).features != a.features);

  const auto sud = generate_dataset(TaskKind::kSudoku, 5, 0, 1, 4, params);
  const auto s = perceive(sud[0], make_featurizer(TaskKind::kSudoku, 4, fp));
  const auto& inst = std::get<sudoku::Instance>(sud[0].instance);
  CHECK(s.positions.size() == sudoku::kCells - inst.clues.size());
  for (std::size_t c : inst.clues) {
    CHECK(std::find(s.positions.begin(), s.positions.end(), c) == s.positions.end());
  }

  const auto graphs = generate_dataset(TaskKind::kSdsp, 2, 0, 1, 4, params);
  const auto& g = std::get<sdsp::Instance>(graphs[0].instance);
  const Vector x = sdsp_input(g);
  CHECK(x.size() == 10 * 10 + 10);
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = 0; j < 10; ++j) CHECK(x[i * 10 + j] == g.graph.weight(i, j) / 9.0);
    CHECK(x[100 + i] == (i == g.destination ? 1.0 : 0.0));
  }
  CHECK_THROWS(perceive(graphs[0], f));
}
