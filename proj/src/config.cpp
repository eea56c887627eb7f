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


#include "softground/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace softground {
namespace {

namespace pt = boost::property_tree;

std::string fmt(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}
std::string fmt(std::uint64_t v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }

template <typename T>
T parse_number(const std::string& text) {
  T v{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("not a boolean: '" + text + "'");
}

struct Entry {
  ConfigKey name;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

// Binds a numeric or boolean RunConfig member.
template <typename T>
Entry bind_run(std::string section, std::string key, std::string help,
           T RunConfig::*member) {
  return Entry{{std::move(section), std::move(key), std::move(help)},
               [member](const RunConfig& c) {
                 if constexpr (std::is_same_v<T, bool>) return fmt(c.*member);
                 else if constexpr (std::is_floating_point_v<T>) return fmt(c.*member);
                 else if constexpr (std::is_same_v<T, std::string>) return c.*member;
                 else return fmt(static_cast<std::uint64_t>(c.*member));
               },
               [member](RunConfig& c, const std::string& v) {
                 if constexpr (std::is_same_v<T, bool>) c.*member = parse_bool(v);
                 else if constexpr (std::is_same_v<T, std::string>) c.*member = v;
                 else c.*member = parse_number<T>(v);
               }};
}

template <typename T>
Entry bind_train(std::string section, std::string key, std::string help,
                 T TrainConfig::*member) {
  return Entry{{std::move(section), std::move(key), std::move(help)},
               [member](const RunConfig& c) {
                 if constexpr (std::is_same_v<T, bool>) return fmt(c.train.*member);
                 else if constexpr (std::is_floating_point_v<T>) return fmt(c.train.*member);
                 else if constexpr (std::is_same_v<T, std::string>) return c.train.*member;
                 else return fmt(static_cast<std::uint64_t>(c.train.*member));
               },
               [member](RunConfig& c, const std::string& v) {
                 if constexpr (std::is_same_v<T, bool>) c.train.*member = parse_bool(v);
                 else if constexpr (std::is_same_v<T, std::string>) c.train.*member = v;
                 else c.train.*member = parse_number<T>(v);
               }};
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    e.push_back({{"run", "task", "hwf | sudoku | sdsp"},
                 [](const RunConfig& c) { return std::string(to_string(c.train.task)); },
                 [](RunConfig& c, const std::string& v) { c.train.task = parse_task_kind(v); }});
    e.push_back({{"run", "method", "ours | ssl | na | mcmc_noproj | sup"},
                 [](const RunConfig& c) { return std::string(to_string(c.train.method)); },
                 [](RunConfig& c, const std::string& v) { c.train.method = parse_method(v); }});
    e.push_back(bind_train("run", "seed", "seed for data, model init, chains and batch order",
                           &TrainConfig::seed));
    e.push_back(bind_train("run", "workers", "parallel sampling threads",
                           &TrainConfig::workers));
    e.push_back(bind_run("run", "output_dir", "directory for datasets, metrics and checkpoints",
                     &RunConfig::output_dir));

    e.push_back(bind_run("data", "train_size", "training examples", &RunConfig::train_size));
    e.push_back(bind_run("data", "test_size", "test examples", &RunConfig::test_size));
    e.push_back(bind_run("data", "train_path", "training set file (empty: <output_dir>/train.jsonl)",
                     &RunConfig::train_path));
    e.push_back(bind_run("data", "test_path", "test set file (empty: <output_dir>/test.jsonl)",
                     &RunConfig::test_path));
    e.push_back(bind_run("data", "featurizer_seed", "seed of the symbol prototypes and feature noise",
                     &RunConfig::featurizer_seed));
    e.push_back({{"data", "hwf_length", "expression length (odd)"},
                 [](const RunConfig& c) { return fmt(std::uint64_t{c.data.hwf_length}); },
                 [](RunConfig& c, const std::string& v) {
                   c.data.hwf_length = parse_number<std::size_t>(v);
                 }});
    e.push_back({{"data", "sudoku_clues", "cells revealed symbolically per puzzle"},
                 [](const RunConfig& c) { return fmt(std::uint64_t{c.data.sudoku_clues}); },
                 [](RunConfig& c, const std::string& v) {
                   c.data.sudoku_clues = parse_number<std::size_t>(v);
                 }});
    e.push_back({{"data", "sdsp_nodes", "graph size"},
                 [](const RunConfig& c) { return fmt(std::uint64_t{c.data.sdsp_nodes}); },
                 [](RunConfig& c, const std::string& v) {
                   c.data.sdsp_nodes = parse_number<std::size_t>(v);
                 }});
    e.push_back({{"data", "sdsp_edge_prob", "probability of each non-tree edge"},
                 [](const RunConfig& c) { return fmt(c.data.sdsp_edge_prob); },
                 [](RunConfig& c, const std::string& v) {
                   c.data.sdsp_edge_prob = parse_number<double>(v);
                 }});
    e.push_back({{"data", "feature_dim", "feature vector length"},
                 [](const RunConfig& c) {
                   return fmt(static_cast<std::uint64_t>(c.train.featurizer.feature_dim));
                 },
                 [](RunConfig& c, const std::string& v) {
                   c.train.featurizer.feature_dim = parse_number<int>(v);
                 }});
    e.push_back({{"data", "prototype_scale", "norm of a noiseless feature vector"},
                 [](const RunConfig& c) { return fmt(c.train.featurizer.scale); },
                 [](RunConfig& c, const std::string& v) {
                   c.train.featurizer.scale = parse_number<double>(v);
                 }});
    e.push_back({{"data", "noise_sigma", "per-coordinate feature noise"},
                 [](const RunConfig& c) { return fmt(c.train.featurizer.noise_sigma); },
                 [](RunConfig& c, const std::string& v) {
                   c.train.featurizer.noise_sigma = parse_number<double>(v);
                 }});

    e.push_back({{"schedule", "kind", "log | exp | linear"},
                 [](const RunConfig& c) { return std::string(to_string(c.train.schedule.kind)); },
                 [](RunConfig& c, const std::string& v) {
                   c.train.schedule.kind = parse_schedule_kind(v);
                 }});
    e.push_back({{"schedule", "gamma0", "initial temperature"},
                 [](const RunConfig& c) { return fmt(c.train.schedule.gamma0); },
                 [](RunConfig& c, const std::string& v) {
                   c.train.schedule.gamma0 = parse_number<double>(v);
                 }});
    e.push_back({{"schedule", "alpha", "decay rate (exp: factor per epoch, linear: decrement)"},
                 [](const RunConfig& c) { return fmt(c.train.schedule.alpha); },
                 [](RunConfig& c, const std::string& v) {
                   c.train.schedule.alpha = parse_number<double>(v);
                 }});
    e.push_back({{"schedule", "floor", "lowest temperature emitted"},
                 [](const RunConfig& c) { return fmt(c.train.schedule.floor); },
                 [](RunConfig& c, const std::string& v) {
                   c.train.schedule.floor = parse_number<double>(v);
                 }});

    e.push_back(bind_train("sampler", "projection", "default | edge | identity",
                           &TrainConfig::projection));
    e.push_back(bind_train("sampler", "steps_per_example",
                           "Metropolis steps per chain before each gradient step",
                           &TrainConfig::steps_per_example));

    e.push_back(bind_train("stage1", "epochs", "annealed sampling epochs",
                           &TrainConfig::stage1_epochs));
    e.push_back(bind_train("stage1", "batch_size", "minibatch size (both stages)",
                           &TrainConfig::batch_size));
    e.push_back({{"stage1", "optimizer", "sgd | adam"},
                 [](const RunConfig& c) {
                   return std::string(to_string(c.train.stage1_optimizer));
                 },
                 [](RunConfig& c, const std::string& v) {
                   c.train.stage1_optimizer = parse_optimizer_kind(v);
                 }});
    e.push_back(bind_train("stage1", "learning_rate", "Stage I step size",
                           &TrainConfig::stage1_learning_rate));

    e.push_back(bind_train("stage2", "epochs", "zero-temperature fine-tuning epochs",
                           &TrainConfig::stage2_epochs));
    e.push_back({{"stage2", "optimizer", "sgd | adam"},
                 [](const RunConfig& c) {
                   return std::string(to_string(c.train.stage2_optimizer));
                 },
                 [](RunConfig& c, const std::string& v) {
                   c.train.stage2_optimizer = parse_optimizer_kind(v);
                 }});
    e.push_back(bind_train("stage2", "learning_rate", "Stage II step size",
                           &TrainConfig::stage2_learning_rate));
    e.push_back(bind_train("stage2", "baselines", "also fine-tune the ssl and na methods",
                           &TrainConfig::baseline_stage2));

    e.push_back(bind_train("model", "hidden_units", "hidden layer width",
                           &TrainConfig::hidden_units));
    e.push_back(bind_train("model", "sigma", "standard deviation of the distance regressor",
                           &TrainConfig::sigma));

    e.push_back(bind_run("probe", "instances", "fresh instances per connectivity probe",
                     &RunConfig::probe_instances));
    e.push_back(bind_run("probe", "steps", "Metropolis steps per probed chain",
                     &RunConfig::probe_steps));

    e.push_back(bind_run("oracle", "models", "random models for the gradient identity check",
                     &RunConfig::oracle_models));
    e.push_back(bind_run("oracle", "samples", "chain samples for the distribution check",
                     &RunConfig::oracle_samples));
    e.push_back(bind_run("oracle", "seeds", "seeds averaged in the gradient-bias check",
                     &RunConfig::oracle_seeds));
    return e;
  }();
  return entries;
}

const Entry* find_entry(const std::string& section, const std::string& key) {
  for (const Entry& e : registry()) {
    if (e.name.section == section && e.name.key == key) return &e;
  }
  return nullptr;
}

}  // namespace

std::filesystem::path RunConfig::train_file() const {
  return train_path.empty() ? std::filesystem::path(output_dir) / "train.jsonl"
                            : std::filesystem::path(train_path);
}

std::filesystem::path RunConfig::test_file() const {
  return test_path.empty() ? std::filesystem::path(output_dir) / "test.jsonl"
                           : std::filesystem::path(test_path);
}

RunConfig default_run_config(TaskKind task, Method method) {
  RunConfig c;
  c.train = default_train_config(task);
  c.train.method = method;
  if (method == Method::kSsl) {
    c.train.stage1_optimizer = OptimizerKind::kAdam;
    c.train.stage1_learning_rate = 5e-4;
  }
  switch (task) {
    case TaskKind::kHwf:
      c.train_size = 2000;
      c.test_size = 400;
      break;
    case TaskKind::kSudoku:
      c.train_size = 100;
      c.test_size = 200;
      break;
    case TaskKind::kSdsp:
      c.train_size = 300;
      c.test_size = 100;
      break;
  }
  return c;
}

RunConfig parse_run_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config syntax: ") + e.what());
  }
  TaskKind task = TaskKind::kHwf;
  Method method = Method::kOurs;
  if (auto run = tree.get_child_optional("run")) {
    if (auto t = run->get_optional<std::string>("task")) task = parse_task_kind(*t);
    if (auto m = run->get_optional<std::string>("method")) method = parse_method(*m);
  }
  RunConfig config = default_run_config(task, method);
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw std::invalid_argument("config key '" + section + "' must be inside a section");
    }
    for (const auto& [key, value] : body) {
      const Entry* entry = find_entry(section, key);
      if (!entry) {
        throw std::invalid_argument("unknown config key '" + section + "." + key + "'");
      }
      try {
        entry->set(config, value.data());
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("config key '" + section + "." + key + "': " + e.what());
      }
    }
  }
  validate(config.train);
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config " + path.string());
  return parse_run_config(in);
}

void apply_environment(RunConfig& config) {
  if (const char* dir = std::getenv("SOFTGROUND_OUT_DIR"); dir && *dir) {
    config.output_dir = dir;
  }
  if (const char* workers = std::getenv("SOFTGROUND_WORKERS"); workers && *workers) {
    try {
      config.train.workers = parse_number<std::size_t>(workers);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(std::string("SOFTGROUND_WORKERS: not a number: ") + workers);
    }
  }
}

std::string render_config(const RunConfig& config) {
  std::ostringstream out;
  std::string section;
  for (const Entry& e : registry()) {
    if (e.name.section != section) {
      if (!section.empty()) out << '\n';
      section = e.name.section;
      out << '[' << section << "]\n";
    }
    out << "# " << e.name.help << '\n';
    out << e.name.key << " = " << e.get(config) << '\n';
  }
  return out.str();
}

std::vector<ConfigKey> config_keys() {
  std::vector<ConfigKey> keys;
  for (const Entry& e : registry()) keys.push_back(e.name);
  return keys;
}

}  // namespace softground
