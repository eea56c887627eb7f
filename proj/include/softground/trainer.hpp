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


// Two-stage weakly supervised training.
//
// Stage I keeps one persistent grounding chain per training example. Each
// minibatch advances its chains T projected Metropolis steps at the
// epoch's temperature, then takes one optimizer step on the negative
// log-likelihood of the sampled states. Stage II drops the sampler: every
// epoch it keeps the examples whose argmax prediction already satisfies the
// constraint and fine-tunes on those predictions.
//
// Methods:
//   ours         annealed temperature from the configured schedule
//   ssl          temperature pinned to 1
//   na           temperature pinned to 0.001
//   mcmc_noproj  Sudoku only; identity projection, value-permutation walk
//   sup          trains directly on gold symbols, no sampling

#ifndef SOFTGROUND_TRAINER_HPP_
#define SOFTGROUND_TRAINER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "softground/core.hpp"
#include "softground/dataset.hpp"
#include "softground/perception.hpp"
#include "softground/projection.hpp"

namespace softground {

enum class Method { kOurs, kSsl, kNa, kMcmcNoProj, kSup };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

inline constexpr double kSslGamma = 1.0;
inline constexpr double kNaGamma = 0.001;

struct TrainConfig {
  TaskKind task = TaskKind::kHwf;
  Method method = Method::kOurs;
  CoolingSchedule schedule;
  std::size_t steps_per_example = 10;
  std::size_t batch_size = 64;
  std::size_t stage1_epochs = 200;
  std::size_t stage2_epochs = 30;
  bool baseline_stage2 = false;  // run Stage II for ssl and na as well
  OptimizerKind stage1_optimizer = OptimizerKind::kSgd;
  double stage1_learning_rate = 0.1;
  OptimizerKind stage2_optimizer = OptimizerKind::kAdam;
  double stage2_learning_rate = 1e-3;
  std::string projection = "default";  // default | edge | identity
  std::size_t hidden_units = 64;
  double sigma = 1.0;  // regressor only
  FeaturizerParams featurizer;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

// Per-task defaults; the graph task uses a wider regressor trained with Adam.
TrainConfig default_train_config(TaskKind task);

// Throws std::invalid_argument for inconsistent settings.
void validate(const TrainConfig& config);

// Stage I temperature at `epoch` for the configured method.
Temperature stage1_gamma(const TrainConfig& config, std::uint64_t epoch);

// The sampler projection for a state of dimension `state_dim`.
Projection make_projection(const TrainConfig& config, std::size_t state_dim);

struct EvalMetrics {
  std::size_t examples = 0;
  std::size_t feasible = 0;        // argmax prediction satisfies the constraint
  std::size_t output_correct = 0;  // calculation / board / shortest path
  std::size_t symbols = 0;
  std::size_t symbols_correct = 0;

  double feasible_rate() const;
  double output_accuracy() const;
  double symbol_accuracy() const;
};

struct EpochMetrics {
  std::string stage;  // stage1 | stage2 | sup
  std::size_t epoch = 0;
  double gamma = 0.0;
  EvalMetrics train;  // train.feasible is the grounded-example count
  EvalMetrics test;
  double acceptance_rate = 0.0;
  double escape_rate = 0.0;
  std::size_t updates = 0;       // optimizer steps in the epoch
  std::size_t pseudo_labeled = 0;  // Stage II examples trained on
};

using MetricsSink = std::function<void(const EpochMetrics&)>;

// One JSON object per epoch, and the matching CSV columns.
std::string metrics_json_line(const EpochMetrics& metrics);
std::string metrics_csv_header();
std::string metrics_csv_row(const EpochMetrics& metrics);

// Final record closing a metrics stream.
std::string summary_json_line(const TrainConfig& config, const EvalMetrics& train,
                              const EvalMetrics& test);

class Learner {
 public:
  // Builds features and the initial model. Records must all match
  // config.task.
  Learner(TrainConfig config, std::vector<Record> train,
          std::vector<Record> test = {});
  ~Learner();
  Learner(Learner&&) noexcept;
  Learner& operator=(Learner&&) noexcept;

  const TrainConfig& config() const;

  // Starts every chain on the solver's first feasible state. Called
  // implicitly by train_stage1. Throws Unsatisfiable naming the example.
  void init_chains();
  void train_stage1(const MetricsSink& sink = {});
  void train_stage2(const MetricsSink& sink = {});
  // Stage I epochs on gold symbols with the Stage I optimizer.
  void train_sup(const MetricsSink& sink = {});
  // The full protocol for config.method.
  void run(const MetricsSink& sink = {});

  EvalMetrics evaluate_train() const;
  EvalMetrics evaluate_test() const;

  std::span<const double> parameters() const;
  Checkpoint checkpoint() const;
  // Throws std::invalid_argument when the shape does not match.
  void restore(const Checkpoint& checkpoint);

  // Chains whose current state violates the constraint; always 0.
  std::size_t infeasible_chain_states() const;
  // Gradient steps taken on a constraint-violating state; always 0.
  std::uint64_t infeasible_updates() const;

  class Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace softground

#endif  // SOFTGROUND_TRAINER_HPP_
