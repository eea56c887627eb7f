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


// softground: dataset generation, training, evaluation and diagnostics.
//
//   softground print-config --task hwf > hwf.ini
//   softground gen-data --config hwf.ini
//   softground train --config hwf.ini
//   softground eval --config hwf.ini
//   softground probe --config hwf.ini
//   softground oracle-check
//
// SOFTGROUND_OUT_DIR and SOFTGROUND_WORKERS override the config file;
// command-line flags override both.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "softground/config.hpp"
#include "softground/dataset.hpp"
#include "softground/oracle.hpp"
#include "softground/probe.hpp"
#include "softground/trainer.hpp"

namespace fs = std::filesystem;
using namespace softground;

namespace {

constexpr const char* kFailureMarker = "FAILED";

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> workers;
  std::string task;
  std::string method;
};

RunConfig resolve(const GlobalOptions& opts) {
  RunConfig config;
  if (!opts.config_path.empty()) {
    config = load_run_config(opts.config_path);
  } else {
    const TaskKind task = opts.task.empty() ? TaskKind::kHwf : parse_task_kind(opts.task);
    const Method method = opts.method.empty() ? Method::kOurs : parse_method(opts.method);
    config = default_run_config(task, method);
  }
  if (!opts.config_path.empty() && (!opts.task.empty() || !opts.method.empty())) {
    throw std::invalid_argument("--task and --method cannot be combined with --config");
  }
  apply_environment(config);
  if (opts.seed) config.train.seed = *opts.seed;
  if (opts.out_dir) config.output_dir = *opts.out_dir;
  if (opts.workers) config.train.workers = *opts.workers;
  validate(config.train);
  return config;
}

// Marks the output directory as failed until the command completes, so an
// interrupted run never leaves outputs that look finished.
class OutputGuard {
 public:
  explicit OutputGuard(const fs::path& dir) : marker_(dir / kFailureMarker) {
    fs::create_directories(dir);
    std::ofstream(marker_) << "incomplete\n";
  }
  void fail(const std::string& why) { std::ofstream(marker_) << why << '\n'; }
  void succeed() { fs::remove(marker_); }

 private:
  fs::path marker_;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

int cmd_print_config(const GlobalOptions& opts) {
  std::cout << render_config(resolve(opts));
  return 0;
}

int cmd_gen_data(const RunConfig& config) {
  const TaskKind task = config.train.task;
  const auto train = generate_dataset(task, config.train_size, 0, config.train.seed,
                                      config.featurizer_seed, config.data);
  const auto test = generate_dataset(task, config.test_size, config.train_size,
                                     config.train.seed, config.featurizer_seed,
                                     config.data);
  fs::create_directories(config.train_file().parent_path().empty()
                             ? fs::path(".")
                             : config.train_file().parent_path());
  fs::create_directories(config.test_file().parent_path().empty()
                             ? fs::path(".")
                             : config.test_file().parent_path());
  write_dataset(config.train_file(), train);
  write_dataset(config.test_file(), test);
  std::cout << "wrote " << train.size() << " training and " << test.size()
            << " test " << to_string(task) << " examples to "
            << config.train_file().string() << ", " << config.test_file().string()
            << '\n';
  return 0;
}

Learner make_learner(const RunConfig& config) {
  for (const fs::path& p : {config.train_file(), config.test_file()}) {
    if (!fs::exists(p)) {
      throw std::runtime_error("missing dataset " + p.string() + " (run gen-data first)");
    }
  }
  return Learner(config.train, read_dataset(config.train_file()),
                 read_dataset(config.test_file()));
}

int cmd_train(const RunConfig& config) {
  const fs::path dir = config.output_dir;
  Learner learner = make_learner(config);
  std::ofstream jsonl(dir / "metrics.jsonl", std::ios::binary);
  std::ofstream csv(dir / "metrics.csv", std::ios::binary);
  csv << metrics_csv_header() << '\n';
  learner.run([&](const EpochMetrics& m) {
    jsonl << metrics_json_line(m) << '\n';
    csv << metrics_csv_row(m) << '\n';
    std::fprintf(stderr, "%s epoch %zu gamma %.4g symbol %.3f output %.3f grounded %zu\n",
                 m.stage.c_str(), m.epoch, m.gamma, m.test.symbol_accuracy(),
                 m.test.output_accuracy(), m.train.feasible);
  });
  const std::string summary =
      summary_json_line(config.train, learner.evaluate_train(), learner.evaluate_test());
  jsonl << summary << '\n';
  jsonl.close();
  csv.close();
  if (!jsonl || !csv) throw std::runtime_error("failed writing metrics in " + dir.string());
  save_checkpoint(dir / "checkpoint.json", learner.checkpoint());
  std::cout << summary << '\n';
  return 0;
}

int cmd_eval(const RunConfig& config, const std::string& checkpoint_path) {
  const fs::path cp_path = checkpoint_path.empty()
                               ? fs::path(config.output_dir) / "checkpoint.json"
                               : fs::path(checkpoint_path);
  Learner learner = make_learner(config);
  learner.restore(load_checkpoint(cp_path));
  const std::string summary =
      summary_json_line(config.train, learner.evaluate_train(), learner.evaluate_test());
  write_text(fs::path(config.output_dir) / "eval.json", summary + "\n");
  std::cout << summary << '\n';
  return 0;
}

int cmd_probe(const RunConfig& config) {
  const ProbeReport r = connectivity_report(
      config.train.task, config.data, config.train.projection, config.probe_instances,
      config.probe_steps, Temperature{config.train.schedule.gamma0}, config.train.seed);
  nlohmann::ordered_json j;
  j["task"] = to_string(config.train.task);
  j["projection"] = r.projection;
  j["instances"] = r.instances;
  j["steps"] = r.steps;
  j["gamma"] = config.train.schedule.gamma0;
  j["projected_escape"] = r.projected_escape;
  j["identity_escape"] = r.identity_escape;
  write_text(fs::path(config.output_dir) / "probe.json", j.dump() + "\n");
  std::cout << j.dump() << '\n';
  return 0;
}

int cmd_oracle_check(const RunConfig& config, bool negative_control) {
  OracleSuiteParams params;
  params.models = config.oracle_models;
  params.samples = config.oracle_samples;
  params.seeds = config.oracle_seeds;
  params.seed = config.train.seed;
  params.invert_acceptance = negative_control;
  bool all = true;
  nlohmann::ordered_json report = nlohmann::ordered_json::array();
  for (const CheckResult& r : run_oracle_suite(params)) {
    all = all && r.passed;
    std::printf("%s %-28s value=%.6g threshold=%.6g  %s\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.value, r.threshold, r.detail.c_str());
    report.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"value", r.value},
                      {"threshold", r.threshold},
                      {"detail", r.detail}});
  }
  write_text(fs::path(config.output_dir) / "oracle.json", report.dump() + "\n");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"softened symbol grounding: training and diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions opts;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::size_t workers = 0;
  app.add_option("--config,-c", opts.config_path, "INI run configuration")
      ->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "global seed (overrides run.seed)");
  auto* out_opt = app.add_option("--out", out_dir, "output directory");
  auto* workers_opt =
      app.add_option("--workers", workers, "parallel sampling threads")->check(CLI::PositiveNumber);
  app.add_option("--task", opts.task, "task when no config is given (hwf, sudoku, sdsp)");
  app.add_option("--method", opts.method, "method when no config is given");

  auto* print_config = app.add_subcommand("print-config", "print a complete reference config");
  auto* gen_data = app.add_subcommand("gen-data", "generate train and test datasets");
  auto* train = app.add_subcommand("train", "run the configured training protocol");
  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint on the datasets");
  std::string checkpoint;
  eval->add_option("--checkpoint", checkpoint, "checkpoint (default <out>/checkpoint.json)");
  auto* probe = app.add_subcommand("probe", "connectivity probe under a uniform model");
  auto* oracle = app.add_subcommand("oracle-check", "exact-enumeration oracle checks");
  bool negative_control = false;
  oracle->add_flag("--negative-control", negative_control,
                   "invert the acceptance rule; the distribution check must then fail");

  CLI11_PARSE(app, argc, argv);
  if (*seed_opt) opts.seed = seed;
  if (*out_opt) opts.out_dir = out_dir;
  if (*workers_opt) opts.workers = workers;

  RunConfig config;
  try {
    if (*print_config) return cmd_print_config(opts);
    config = resolve(opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  OutputGuard guard(config.output_dir);
  try {
    int status = 0;
    if (*gen_data) status = cmd_gen_data(config);
    if (*train) status = cmd_train(config);
    if (*eval) status = cmd_eval(config, checkpoint);
    if (*probe) status = cmd_probe(config);
    if (*oracle) status = cmd_oracle_check(config, negative_control);
    if (status == 0) {
      guard.succeed();
    } else {
      guard.fail("command reported failing checks");
    }
    return status;
  } catch (const std::exception& e) {
    guard.fail(e.what());
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
