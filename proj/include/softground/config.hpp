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


// Run configuration files. The format is INI with sections:
//
//   [run]
//   task = hwf
//   method = ours
//
//   [schedule]
//   kind = exp
//
// Every accepted key is declared in one registry, which is also the source
// of the generated reference config. Unknown sections or keys are errors.

#ifndef SOFTGROUND_CONFIG_HPP_
#define SOFTGROUND_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "softground/dataset.hpp"
#include "softground/trainer.hpp"

namespace softground {

struct RunConfig {
  TrainConfig train;
  DataParams data;
  std::size_t train_size = 2000;
  std::size_t test_size = 400;
  std::uint64_t featurizer_seed = 1;
  std::string output_dir = "runs";
  std::string train_path;  // empty: <output_dir>/train.jsonl
  std::string test_path;   // empty: <output_dir>/test.jsonl
  std::size_t probe_instances = 2000;
  std::size_t probe_steps = 10;
  std::size_t oracle_models = 20;
  std::size_t oracle_samples = 100000;
  std::size_t oracle_seeds = 20;

  std::filesystem::path train_file() const;
  std::filesystem::path test_file() const;
};

// Task-specific defaults: dataset sizes, model width and Stage I optimizer.
RunConfig default_run_config(TaskKind task, Method method = Method::kOurs);

// Parses INI text. `run.task` and `run.method` select the defaults that the
// remaining keys override. Throws std::invalid_argument naming the key on
// unknown keys or bad values.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

// Applies SOFTGROUND_OUT_DIR and SOFTGROUND_WORKERS when set.
void apply_environment(RunConfig& config);

// A complete, commented config holding every key at its value in `config`.
std::string render_config(const RunConfig& config);

struct ConfigKey {
  std::string section;
  std::string key;
  std::string help;
};
std::vector<ConfigKey> config_keys();

}  // namespace softground

#endif  // SOFTGROUND_CONFIG_HPP_
