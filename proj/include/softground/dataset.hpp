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


// Datasets are JSON-lines files, one example per line:
//
//   {"task":"hwf","id":3,"featurizer_seed":11,"gold":"4*9+3+3","target":"42/1"}
//   {"task":"sudoku","id":0,"featurizer_seed":11,"gold":"2431/3142/4213/1324",
//    "clues":[0,6]}
//   {"task":"sdsp","id":7,"featurizer_seed":11,"gold":[...],"n":10,
//    "adjacency":[...],"source":2,"destination":5}
//
// Gold symbols are carried for evaluation and for the supervised reference
// only. Features are not stored; they are regenerated from the featurizer
// seed and the example id.

#ifndef SOFTGROUND_DATASET_HPP_
#define SOFTGROUND_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "softground/core.hpp"
#include "softground/hwf.hpp"
#include "softground/perception.hpp"
#include "softground/sdsp.hpp"
#include "softground/sudoku.hpp"

namespace softground {

enum class TaskKind { kHwf, kSudoku, kSdsp };

std::string_view to_string(TaskKind kind);
TaskKind parse_task_kind(std::string_view name);

using InstancePayload =
    std::variant<hwf::Instance, sudoku::Instance, sdsp::Instance>;

struct Record {
  std::uint64_t id = 0;
  std::uint64_t featurizer_seed = 0;
  InstancePayload instance;

  TaskKind task() const { return static_cast<TaskKind>(instance.index()); }
};

std::string to_json_line(const Record& record);
// Throws std::invalid_argument on malformed or inconsistent records.
Record parse_record(std::string_view line);

void write_dataset(const std::filesystem::path& path,
                   const std::vector<Record>& records);
std::vector<Record> read_dataset(const std::filesystem::path& path);

struct DataParams {
  std::size_t hwf_length = hwf::kDefaultLength;
  std::size_t sudoku_clues = 2;
  std::size_t sdsp_nodes = 10;
  double sdsp_edge_prob = 0.2;
};

// Generates `count` satisfiable examples with ids first_id, first_id + 1, ...
// Example k draws from its own stream of `seed`, so a split is reproducible
// independently of the other split.
std::vector<Record> generate_dataset(TaskKind task, std::size_t count,
                                     std::uint64_t first_id,
                                     std::uint64_t seed,
                                     std::uint64_t featurizer_seed,
                                     const DataParams& params);

struct FeaturizerParams {
  int feature_dim = 16;
  double scale = 3.0;
  double noise_sigma = 0.6;
};

// Symbol class of each image position and the matching feature vectors.
// HWF: every token is an image. Sudoku: every non-clue cell is an image of
// its gold value. Throws for SDSP records, whose input is the graph itself.
struct PerceivedSymbols {
  std::vector<std::size_t> positions;  // state indices carrying an image
  std::vector<Vector> features;
};

Featurizer make_featurizer(TaskKind task, std::uint64_t featurizer_seed,
                           const FeaturizerParams& params);

PerceivedSymbols perceive(const Record& record, const Featurizer& featurizer);

// Regressor input for a graph: weights / 9 row-major, then a one-hot
// destination.
Vector sdsp_input(const sdsp::Instance& instance);

}  // namespace softground

#endif  // SOFTGROUND_DATASET_HPP_
