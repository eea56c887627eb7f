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


#include "softground/dataset.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace softground {
namespace {

using nlohmann::json;

constexpr std::uint64_t kFeatureSalt = 0x66656174ULL;
constexpr std::uint64_t kInstanceSalt = 0x64617461ULL;
constexpr int kMaxRetries = 100;

template <typename T>
T field(const json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw std::invalid_argument(std::string("record missing field '") + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad field '") + key + "': " + e.what());
  }
}

sudoku::Board parse_board(const std::string& text) {
  sudoku::Board board;
  for (char c : text) {
    if (c == '/') continue;
    if (c < '0' || c > '4') throw std::invalid_argument("bad board: " + text);
    board.push_back(c - '0');
  }
  if (board.size() != sudoku::kCells) throw std::invalid_argument("bad board: " + text);
  return board;
}

bool satisfiable(const Record& record) {
  return std::visit(
      [](const auto& inst) -> bool {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, hwf::Instance>) {
          return hwf::feasible(inst.gold, inst.target);
        } else if constexpr (std::is_same_v<T, sudoku::Instance>) {
          return sudoku::Task(inst).feasible(inst.gold);
        } else {
          return inst.graph.connected() && sdsp::feasible(inst, inst.exact);
        }
      },
      record.instance);
}

}  // namespace

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::kHwf:
      return "hwf";
    case TaskKind::kSudoku:
      return "sudoku";
    case TaskKind::kSdsp:
      return "sdsp";
  }
  return "?";
}

TaskKind parse_task_kind(std::string_view name) {
  if (name == "hwf") return TaskKind::kHwf;
  if (name == "sudoku") return TaskKind::kSudoku;
  if (name == "sdsp") return TaskKind::kSdsp;
  throw std::invalid_argument("unknown task '" + std::string(name) +
                              "' (expected hwf, sudoku or sdsp)");
}

std::string to_json_line(const Record& record) {
  json doc;
  doc["task"] = to_string(record.task());
  doc["id"] = record.id;
  doc["featurizer_seed"] = record.featurizer_seed;
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, hwf::Instance>) {
          doc["gold"] = hwf::format_tokens(inst.gold);
          doc["target"] = hwf::format_rational(inst.target);
        } else if constexpr (std::is_same_v<T, sudoku::Instance>) {
          doc["gold"] = sudoku::format_board(inst.gold);
          doc["clues"] = inst.clues;
        } else {
          doc["gold"] = inst.exact;
          doc["n"] = inst.graph.size();
          doc["adjacency"] = inst.graph.weights();
          doc["source"] = inst.source;
          doc["destination"] = inst.destination;
        }
      },
      record.instance);
  return doc.dump();
}

Record parse_record(std::string_view line) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed record: ") + e.what());
  }
  Record record;
  record.id = field<std::uint64_t>(doc, "id");
  record.featurizer_seed = field<std::uint64_t>(doc, "featurizer_seed");
  switch (parse_task_kind(field<std::string>(doc, "task"))) {
    case TaskKind::kHwf: {
      hwf::Instance inst;
      inst.gold = hwf::parse_tokens(field<std::string>(doc, "gold"));
      inst.length = inst.gold.size();
      inst.target = hwf::parse_rational(field<std::string>(doc, "target"));
      if (!hwf::well_formed(inst.gold)) {
        throw std::invalid_argument("malformed gold expression in record " +
                                    std::to_string(record.id));
      }
      record.instance = std::move(inst);
      break;
    }
    case TaskKind::kSudoku: {
      sudoku::Instance inst;
      inst.gold = parse_board(field<std::string>(doc, "gold"));
      inst.clues = field<std::vector<std::size_t>>(doc, "clues");
      for (std::size_t c : inst.clues) {
        if (c >= sudoku::kCells) throw std::invalid_argument("clue cell out of range");
      }
      record.instance = std::move(inst);
      break;
    }
    case TaskKind::kSdsp: {
      sdsp::Instance inst;
      const auto n = field<std::size_t>(doc, "n");
      inst.graph = sdsp::Graph(n, field<std::vector<int>>(doc, "adjacency"));
      inst.source = field<std::size_t>(doc, "source");
      inst.destination = field<std::size_t>(doc, "destination");
      inst.exact = field<std::vector<double>>(doc, "gold");
      if (inst.source >= n || inst.destination >= n || inst.exact.size() != n) {
        throw std::invalid_argument("inconsistent graph record " +
                                    std::to_string(record.id));
      }
      record.instance = std::move(inst);
      break;
    }
  }
  return record;
}

void write_dataset(const std::filesystem::path& path,
                   const std::vector<Record>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const Record& r : records) out << to_json_line(r) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<Record> read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<Record> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      records.push_back(parse_record(line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                  ": " + e.what());
    }
  }
  return records;
}

std::vector<Record> generate_dataset(TaskKind task, std::size_t count,
                                     std::uint64_t first_id,
                                     std::uint64_t seed,
                                     std::uint64_t featurizer_seed,
                                     const DataParams& params) {
  std::vector<Record> records;
  records.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Record record;
    record.id = first_id + k;
    record.featurizer_seed = featurizer_seed;
    Rng rng = make_stream(seed, record.id, kInstanceSalt);
    bool ok = false;
    for (int attempt = 0; attempt < kMaxRetries && !ok; ++attempt) {
      switch (task) {
        case TaskKind::kHwf:
          record.instance = hwf::random_instance(params.hwf_length, rng);
          break;
        case TaskKind::kSudoku:
          record.instance = sudoku::random_instance(params.sudoku_clues, rng);
          break;
        case TaskKind::kSdsp:
          record.instance =
              sdsp::random_instance(params.sdsp_nodes, params.sdsp_edge_prob, rng);
          break;
      }
      ok = satisfiable(record);
    }
    if (!ok) {
      throw Unsatisfiable("could not generate a satisfiable example " +
                          std::to_string(record.id));
    }
    records.push_back(std::move(record));
  }
  return records;
}

Featurizer make_featurizer(TaskKind task, std::uint64_t featurizer_seed,
                           const FeaturizerParams& params) {
  const int classes = task == TaskKind::kHwf ? hwf::kNumClasses : sudoku::kNumClasses;
  return Featurizer(classes, params.feature_dim, params.scale, params.noise_sigma,
                    featurizer_seed);
}

PerceivedSymbols perceive(const Record& record, const Featurizer& featurizer) {
  PerceivedSymbols out;
  Rng rng = make_stream(record.featurizer_seed, record.id, kFeatureSalt);
  if (const auto* h = std::get_if<hwf::Instance>(&record.instance)) {
    for (std::size_t j = 0; j < h->gold.size(); ++j) {
      out.positions.push_back(j);
      out.features.push_back(featurizer.featurize(h->gold[j], rng));
    }
  } else if (const auto* s = std::get_if<sudoku::Instance>(&record.instance)) {
    std::vector<bool> clue(sudoku::kCells, false);
    for (std::size_t c : s->clues) clue[c] = true;
    for (std::size_t j = 0; j < sudoku::kCells; ++j) {
      if (clue[j]) continue;
      out.positions.push_back(j);
      out.features.push_back(featurizer.featurize(s->gold[j] - 1, rng));
    }
  } else {
    throw std::invalid_argument("graph examples have no symbol images");
  }
  return out;
}

Vector sdsp_input(const sdsp::Instance& instance) {
  const std::size_t n = instance.graph.size();
  Vector x;
  x.reserve(n * n + n);
  for (int w : instance.graph.weights()) {
    x.push_back(static_cast<double>(w) / sdsp::kMaxWeight);
  }
  for (std::size_t i = 0; i < n; ++i) x.push_back(i == instance.destination ? 1.0 : 0.0);
  return x;
}

}  // namespace softground
