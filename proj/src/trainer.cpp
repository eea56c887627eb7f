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


#include "softground/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <type_traits>

#include "json.hpp"
#include "softground/parallel.hpp"
#include "softground/sampler.hpp"

namespace softground {
namespace {

constexpr std::uint64_t kModelSalt = 0x6d6f64656cULL;
constexpr std::uint64_t kOrderSalt = 0x6f72646572ULL;
constexpr std::uint64_t kStage2Salt = 0x7374616765ULL;

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// ---------------------------------------------------------------------------
// Problem adapters. Each one owns the instances and inputs of one split and
// knows how to score, perceive and differentiate a state of its task.

struct HwfTraits {
  using Instance = hwf::Instance;
  using Task = hwf::Task;
  using State = hwf::Tokens;

  static Task make_task(const Instance& inst, Method) { return Task(inst); }
  static int to_class(int value) { return value; }
  static int from_class(int c) { return c; }
  static State blank(const Instance& inst) { return State(inst.length, 0); }
  static bool output_correct(const Instance& inst, const State& s) {
    return hwf::feasible(s, inst.target);
  }
};

struct SudokuTraits {
  using Instance = sudoku::Instance;
  using Task = sudoku::Task;
  using State = sudoku::Board;

  static Task make_task(const Instance& inst, Method method) {
    return Task(inst, method == Method::kMcmcNoProj
                          ? sudoku::Walker::kValuePermutation
                          : sudoku::Walker::kBlockSwap);
  }
  static int to_class(int value) { return value - 1; }
  static int from_class(int c) { return c + 1; }
  static State blank(const Instance& inst) { return Task(inst).clue_board(); }
  static bool output_correct(const Instance& inst, const State& s) {
    return s == inst.gold;
  }
};

template <typename Traits>
class DiscreteProblem {
 public:
  using Instance = typename Traits::Instance;
  using Task = typename Traits::Task;
  using State = typename Traits::State;
  using Model = ClassifierModel;

  DiscreteProblem(const std::vector<Record>& records,
                  const FeaturizerParams& params, Method method)
      : method_(method) {
    std::optional<Featurizer> featurizer;
    for (const Record& r : records) {
      if (!featurizer || featurizer_seed_ != r.featurizer_seed) {
        featurizer_seed_ = r.featurizer_seed;
        featurizer.emplace(make_featurizer(r.task(), r.featurizer_seed, params));
      }
      ids_.push_back(r.id);
      instances_.push_back(std::get<Instance>(r.instance));
      perceived_.push_back(perceive(r, *featurizer));
    }
  }

  std::size_t size() const { return instances_.size(); }
  std::uint64_t id(std::size_t i) const { return ids_[i]; }
  Task task(std::size_t i) const { return Traits::make_task(instances_[i], method_); }
  const State& gold(std::size_t i) const { return instances_[i].gold; }

  auto log_density(const Model& model, std::size_t i) const {
    const PerceivedSymbols* p = &perceived_[i];
    return [table = log_softmax_table(model, p->features), p](const State& s) {
      double total = 0.0;
      for (std::size_t j = 0; j < p->positions.size(); ++j) {
        total += table.at(j, Traits::to_class(s[p->positions[j]]));
      }
      return total;
    };
  }

  void accumulate_grad(const Model& model, std::size_t i, const State& s,
                       double weight, std::span<double> grad) const {
    const PerceivedSymbols& p = perceived_[i];
    std::vector<int> classes;
    classes.reserve(p.positions.size());
    for (std::size_t pos : p.positions) classes.push_back(Traits::to_class(s[pos]));
    accumulate_nll_grad(model, p.features, classes, weight, grad);
  }

  State predict(const Model& model, std::size_t i) const {
    const PerceivedSymbols& p = perceived_[i];
    State s = Traits::blank(instances_[i]);
    const std::vector<int> classes = predict_argmax(model, p.features);
    for (std::size_t j = 0; j < p.positions.size(); ++j) {
      s[p.positions[j]] = Traits::from_class(classes[j]);
    }
    return s;
  }

  bool feasible(std::size_t i, const State& s) const { return task(i).feasible(s); }
  bool output_correct(std::size_t i, const State& s) const {
    return Traits::output_correct(instances_[i], s);
  }
  std::pair<std::size_t, std::size_t> symbol_score(std::size_t i,
                                                   const State& s) const {
    std::size_t hits = 0;
    for (std::size_t pos : perceived_[i].positions) {
      if (s[pos] == instances_[i].gold[pos]) ++hits;
    }
    return {hits, perceived_[i].positions.size()};
  }

  Model make_model(const TrainConfig& config) const {
    const std::size_t classes = std::is_same_v<Traits, HwfTraits>
                                    ? hwf::kNumClasses
                                    : sudoku::kNumClasses;
    return Model(static_cast<std::size_t>(config.featurizer.feature_dim),
                 config.hidden_units, classes);
  }

  std::size_t state_dim() const {
    if constexpr (std::is_same_v<Traits, HwfTraits>) {
      return instances_.empty() ? hwf::kDefaultLength : instances_.front().length;
    } else {
      return sudoku::kCells;
    }
  }

 private:
  Method method_;
  std::uint64_t featurizer_seed_ = 0;
  std::vector<std::uint64_t> ids_;
  std::vector<Instance> instances_;
  std::vector<PerceivedSymbols> perceived_;
};

class SdspProblem {
 public:
  using Task = sdsp::Task;
  using State = std::vector<double>;
  using Model = RegressorModel;

  SdspProblem(const std::vector<Record>& records, const FeaturizerParams&,
              Method) {
    for (const Record& r : records) {
      ids_.push_back(r.id);
      instances_.push_back(std::get<sdsp::Instance>(r.instance));
      inputs_.push_back(sdsp_input(instances_.back()));
    }
  }

  std::size_t size() const { return instances_.size(); }
  std::uint64_t id(std::size_t i) const { return ids_[i]; }
  Task task(std::size_t i) const { return Task(instances_[i]); }
  const State& gold(std::size_t i) const { return instances_[i].exact; }

  auto log_density(const Model& model, std::size_t i) const {
    return [mean = model.predict(inputs_[i]), sigma = model.sigma](const State& s) {
      return logp_gaussian(mean, s, sigma);
    };
  }

  void accumulate_grad(const Model& model, std::size_t i, const State& s,
                       double weight, std::span<double> grad) const {
    accumulate_nll_grad(model, inputs_[i], s, weight, grad);
  }

  State predict(const Model& model, std::size_t i) const {
    return model.predict(inputs_[i]);
  }

  bool feasible(std::size_t i, const State& s) const {
    return sdsp::feasible(instances_[i], s);
  }
  bool output_correct(std::size_t i, const State& s) const { return feasible(i, s); }
  // A node's distance counts as recognized when it rounds to the exact value.
  std::pair<std::size_t, std::size_t> symbol_score(std::size_t i,
                                                   const State& s) const {
    std::size_t hits = 0;
    const State& exact = instances_[i].exact;
    for (std::size_t k = 0; k < exact.size(); ++k) {
      if (std::abs(s[k] - exact[k]) < 0.5) ++hits;
    }
    return {hits, exact.size()};
  }

  Model make_model(const TrainConfig& config) const {
    const std::size_t n = state_dim();
    return Model(n * n + n, config.hidden_units, n, config.sigma);
  }

  std::size_t state_dim() const {
    return instances_.empty() ? 10 : instances_.front().graph.size();
  }

 private:
  std::vector<std::uint64_t> ids_;
  std::vector<sdsp::Instance> instances_;
  std::vector<Vector> inputs_;
};

using HwfProblem = DiscreteProblem<HwfTraits>;
using SudokuProblem = DiscreteProblem<SudokuTraits>;

std::string_view model_kind(const ClassifierModel&) { return "classifier"; }
std::string_view model_kind(const RegressorModel&) { return "regressor"; }

}  // namespace

// ---------------------------------------------------------------------------

class Learner::Impl {
 public:
  virtual ~Impl() = default;
  virtual const TrainConfig& config() const = 0;
  virtual void init_chains() = 0;
  virtual void train_stage1(const MetricsSink& sink) = 0;
  virtual void train_stage2(const MetricsSink& sink) = 0;
  virtual void train_sup(const MetricsSink& sink) = 0;
  virtual EvalMetrics evaluate_train() const = 0;
  virtual EvalMetrics evaluate_test() const = 0;
  virtual std::span<const double> parameters() const = 0;
  virtual Checkpoint checkpoint() const = 0;
  virtual void restore(const Checkpoint& checkpoint) = 0;
  virtual std::size_t infeasible_chain_states() const = 0;
  virtual std::uint64_t infeasible_updates() const = 0;
};

namespace {

template <typename Problem>
class Engine final : public Learner::Impl {
 public:
  using State = typename Problem::State;
  using Model = typename Problem::Model;
  using Chain = GroundingChain<State>;

  Engine(TrainConfig config, const std::vector<Record>& train,
         const std::vector<Record>& test)
      : config_(std::move(config)),
        train_(train, config_.featurizer, config_.method),
        test_(test, config_.featurizer, config_.method),
        model_(train_.make_model(config_)),
        projection_(make_projection(config_, train_.state_dim())) {
    Rng rng = make_stream(config_.seed, 0, kModelSalt);
    model_.net.init_glorot(rng);
  }

  const TrainConfig& config() const override { return config_; }

  void init_chains() override {
    if (!chains_.empty()) return;
    std::vector<std::optional<Chain>> slots(train_.size());
    parallel_for(train_.size(), config_.workers, [&](std::size_t i) {
      slots[i] = init_chain(train_.task(i), train_.id(i), config_.seed);
    });
    chains_.reserve(slots.size());
    for (auto& c : slots) chains_.push_back(std::move(*c));
  }

  void train_stage1(const MetricsSink& sink) override {
    init_chains();
    OptimState opt = make_optimizer(config_.stage1_optimizer,
                                    config_.stage1_learning_rate);
    for (std::size_t epoch = 0; epoch < config_.stage1_epochs; ++epoch) {
      const Temperature gamma = stage1_gamma(config_, epoch);
      std::uint64_t steps = 0;
      std::uint64_t accepted = 0;
      for (const Chain& c : chains_) {
        steps -= c.steps_taken;
        accepted -= c.accepted;
      }
      std::size_t updates = 0;
      for (auto& batch : minibatches(all_indices(), epoch, kOrderSalt)) {
        parallel_for(batch.size(), config_.workers, [&](std::size_t k) {
          const std::size_t i = batch[k];
          auto logp = train_.log_density(model_, i);
          run_chain(chains_[i], train_.task(i), projection_, logp, gamma,
                    config_.steps_per_example);
        });
        gradient_step(batch, [&](std::size_t i) -> const State& {
          return chains_[i].state;
        }, opt);
        ++updates;
      }
      for (const Chain& c : chains_) {
        steps += c.steps_taken;
        accepted += c.accepted;
      }
      EpochMetrics m = snapshot("stage1", epoch, gamma.gamma);
      m.updates = updates;
      m.acceptance_rate = steps == 0 ? 0.0
                                     : static_cast<double>(accepted) /
                                           static_cast<double>(steps);
      std::size_t escaped = 0;
      for (const Chain& c : chains_) escaped += c.escaped() ? 1 : 0;
      m.escape_rate = ratio(escaped, chains_.size());
      if (sink) sink(m);
    }
  }

  void train_stage2(const MetricsSink& sink) override {
    OptimState opt = make_optimizer(config_.stage2_optimizer,
                                    config_.stage2_learning_rate);
    for (std::size_t epoch = 0; epoch < config_.stage2_epochs; ++epoch) {
      std::vector<std::optional<State>> labels(train_.size());
      parallel_for(train_.size(), config_.workers, [&](std::size_t i) {
        State s = train_.predict(model_, i);
        if (train_.feasible(i, s)) labels[i] = std::move(s);
      });
      std::vector<std::size_t> kept;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i]) kept.push_back(i);
      }
      std::size_t updates = 0;
      for (auto& batch : minibatches(kept, epoch, kStage2Salt)) {
        gradient_step(batch, [&](std::size_t i) -> const State& {
          return *labels[i];
        }, opt);
        ++updates;
      }
      EpochMetrics m = snapshot("stage2", epoch, 0.0);
      m.updates = updates;
      m.pseudo_labeled = kept.size();
      if (sink) sink(m);
    }
  }

  void train_sup(const MetricsSink& sink) override {
    OptimState opt = make_optimizer(config_.stage1_optimizer,
                                    config_.stage1_learning_rate);
    for (std::size_t epoch = 0; epoch < config_.stage1_epochs; ++epoch) {
      std::size_t updates = 0;
      for (auto& batch : minibatches(all_indices(), epoch, kOrderSalt)) {
        gradient_step(batch, [&](std::size_t i) -> const State& {
          return train_.gold(i);
        }, opt);
        ++updates;
      }
      EpochMetrics m = snapshot("sup", epoch, 0.0);
      m.updates = updates;
      if (sink) sink(m);
    }
  }

  EvalMetrics evaluate_train() const override { return evaluate(train_); }
  EvalMetrics evaluate_test() const override { return evaluate(test_); }

  std::span<const double> parameters() const override { return model_.net.params(); }

  Checkpoint checkpoint() const override {
    Checkpoint cp;
    cp.kind = std::string(model_kind(model_));
    cp.seed = config_.seed;
    if constexpr (std::is_same_v<Model, RegressorModel>) cp.sigma = model_.sigma;
    cp.net = model_.net;
    return cp;
  }

  void restore(const Checkpoint& cp) override {
    if (cp.kind != model_kind(model_) ||
        cp.net.input_dim() != model_.net.input_dim() ||
        cp.net.hidden_dim() != model_.net.hidden_dim() ||
        cp.net.output_dim() != model_.net.output_dim()) {
      throw std::invalid_argument("checkpoint shape does not match the task model");
    }
    model_.net = cp.net;
    if constexpr (std::is_same_v<Model, RegressorModel>) model_.sigma = cp.sigma;
  }

  std::size_t infeasible_chain_states() const override {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < chains_.size(); ++i) {
      if (!train_.feasible(i, chains_[i].state)) ++bad;
    }
    return bad;
  }

  std::uint64_t infeasible_updates() const override { return infeasible_updates_; }

 private:
  static OptimState make_optimizer(OptimizerKind kind, double lr) {
    return kind == OptimizerKind::kSgd ? OptimState::sgd(lr) : OptimState::adam(lr);
  }

  std::vector<std::size_t> all_indices() const {
    std::vector<std::size_t> all(train_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }

  std::vector<std::vector<std::size_t>> minibatches(std::vector<std::size_t> pool,
                                                    std::size_t epoch,
                                                    std::uint64_t salt) const {
    Rng rng = make_stream(config_.seed, epoch, salt);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::vector<std::size_t>> batches;
    for (std::size_t b = 0; b < pool.size(); b += config_.batch_size) {
      const std::size_t e = std::min(pool.size(), b + config_.batch_size);
      batches.emplace_back(pool.begin() + static_cast<std::ptrdiff_t>(b),
                           pool.begin() + static_cast<std::ptrdiff_t>(e));
    }
    return batches;
  }

  // Mean NLL gradient over the batch. Per-example gradients are computed
  // into private buffers and summed in ascending example order so the
  // result does not depend on the worker count.
  template <typename StateOf>
  void gradient_step(std::vector<std::size_t> batch, StateOf&& state_of,
                     OptimState& opt) {
    std::sort(batch.begin(), batch.end());
    const std::size_t p = model_.net.num_params();
    buffers_.resize(batch.size());
    const double weight = 1.0 / static_cast<double>(batch.size());
    std::vector<char> infeasible(batch.size(), 0);
    parallel_for(batch.size(), config_.workers, [&](std::size_t k) {
      const std::size_t i = batch[k];
      const State& s = state_of(i);
      infeasible[k] = train_.feasible(i, s) ? 0 : 1;
      buffers_[k].assign(p, 0.0);
      train_.accumulate_grad(model_, i, s, weight, buffers_[k]);
    });
    Vector grad(p, 0.0);
    for (std::size_t k = 0; k < batch.size(); ++k) {
      infeasible_updates_ += static_cast<std::uint64_t>(infeasible[k]);
      for (std::size_t j = 0; j < p; ++j) grad[j] += buffers_[k][j];
    }
    optimizer_step(model_.net.params(), opt, grad);
  }

  EvalMetrics evaluate(const Problem& problem) const {
    struct Row {
      bool feasible = false;
      bool correct = false;
      std::size_t hits = 0;
      std::size_t total = 0;
    };
    std::vector<Row> rows(problem.size());
    parallel_for(problem.size(), config_.workers, [&](std::size_t i) {
      const State s = problem.predict(model_, i);
      rows[i].feasible = problem.feasible(i, s);
      rows[i].correct = problem.output_correct(i, s);
      std::tie(rows[i].hits, rows[i].total) = problem.symbol_score(i, s);
    });
    EvalMetrics m;
    m.examples = rows.size();
    for (const Row& r : rows) {
      m.feasible += r.feasible ? 1 : 0;
      m.output_correct += r.correct ? 1 : 0;
      m.symbols += r.total;
      m.symbols_correct += r.hits;
    }
    return m;
  }

  EpochMetrics snapshot(const char* stage, std::size_t epoch, double gamma) const {
    EpochMetrics m;
    m.stage = stage;
    m.epoch = epoch;
    m.gamma = gamma;
    m.train = evaluate(train_);
    m.test = evaluate(test_);
    return m;
  }

  TrainConfig config_;
  Problem train_;
  Problem test_;
  Model model_;
  Projection projection_;
  std::vector<Chain> chains_;
  std::vector<Vector> buffers_;
  std::uint64_t infeasible_updates_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kOurs:
      return "ours";
    case Method::kSsl:
      return "ssl";
    case Method::kNa:
      return "na";
    case Method::kMcmcNoProj:
      return "mcmc_noproj";
    case Method::kSup:
      return "sup";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "ours") return Method::kOurs;
  if (name == "ssl") return Method::kSsl;
  if (name == "na") return Method::kNa;
  if (name == "mcmc_noproj") return Method::kMcmcNoProj;
  if (name == "sup") return Method::kSup;
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected ours, ssl, na, mcmc_noproj or sup)");
}

TrainConfig default_train_config(TaskKind task) {
  TrainConfig config;
  config.task = task;
  if (task == TaskKind::kSdsp) {
    config.hidden_units = 128;
    config.stage1_optimizer = OptimizerKind::kAdam;
    config.stage1_learning_rate = 1e-2;
  }
  return config;
}

void validate(const TrainConfig& config) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (config.method == Method::kMcmcNoProj && config.task != TaskKind::kSudoku) {
    fail("method mcmc_noproj is only defined for the sudoku task");
  }
  if (config.batch_size == 0) fail("batch_size must be positive");
  if (config.hidden_units == 0) fail("hidden_units must be positive");
  if (config.workers == 0) fail("workers must be positive");
  if (!(config.stage1_learning_rate > 0.0) || !(config.stage2_learning_rate > 0.0)) {
    fail("learning rates must be positive");
  }
  if (!(config.sigma > 0.0)) fail("sigma must be positive");
  if (!(config.schedule.gamma0 > 0.0) || !(config.schedule.floor > 0.0) ||
      !(config.schedule.alpha > 0.0)) {
    fail("schedule gamma0, alpha and floor must be positive");
  }
  if (config.schedule.kind == ScheduleKind::kExponential && config.schedule.alpha > 1.0) {
    fail("exponential schedule needs alpha <= 1");
  }
  if (config.projection != "default" && config.projection != "edge" &&
      config.projection != "identity") {
    fail("projection must be default, edge or identity");
  }
  if (config.projection == "edge" && config.task != TaskKind::kHwf) {
    fail("the edge projection is only defined for the hwf task");
  }
  if (config.featurizer.feature_dim <= 0 || config.featurizer.noise_sigma < 0.0) {
    fail("featurizer needs a positive dimension and non-negative noise");
  }
}

Temperature stage1_gamma(const TrainConfig& config, std::uint64_t epoch) {
  switch (config.method) {
    case Method::kSsl:
      return Temperature{kSslGamma};
    case Method::kNa:
      return Temperature{kNaGamma};
    default:
      return gamma_at(config.schedule, epoch);
  }
}

Projection make_projection(const TrainConfig& config, std::size_t state_dim) {
  if (config.method == Method::kMcmcNoProj || config.projection == "identity") {
    return Projection::identity(state_dim);
  }
  switch (config.task) {
    case TaskKind::kHwf:
      return config.projection == "edge" ? hwf::edge_projection(state_dim)
                                         : hwf::default_projection(state_dim);
    case TaskKind::kSudoku:
      return sudoku::block_projection();
    case TaskKind::kSdsp:
      return sdsp::default_projection(state_dim);
  }
  throw std::logic_error("unhandled task");
}

double EvalMetrics::feasible_rate() const { return ratio(feasible, examples); }
double EvalMetrics::output_accuracy() const { return ratio(output_correct, examples); }
double EvalMetrics::symbol_accuracy() const { return ratio(symbols_correct, symbols); }

Learner::Learner(TrainConfig config, std::vector<Record> train,
                 std::vector<Record> test) {
  validate(config);
  for (const auto* split : {&train, &test}) {
    for (const Record& r : *split) {
      if (r.task() != config.task) {
        throw std::invalid_argument("record " + std::to_string(r.id) +
                                    " is not a " + std::string(to_string(config.task)) +
                                    " example");
      }
    }
  }
  switch (config.task) {
    case TaskKind::kHwf:
      impl_ = std::make_unique<Engine<HwfProblem>>(std::move(config), train, test);
      break;
    case TaskKind::kSudoku:
      impl_ = std::make_unique<Engine<SudokuProblem>>(std::move(config), train, test);
      break;
    case TaskKind::kSdsp:
      impl_ = std::make_unique<Engine<SdspProblem>>(std::move(config), train, test);
      break;
  }
}

Learner::~Learner() = default;
Learner::Learner(Learner&&) noexcept = default;
Learner& Learner::operator=(Learner&&) noexcept = default;

const TrainConfig& Learner::config() const { return impl_->config(); }
void Learner::init_chains() { impl_->init_chains(); }
void Learner::train_stage1(const MetricsSink& sink) { impl_->train_stage1(sink); }
void Learner::train_stage2(const MetricsSink& sink) { impl_->train_stage2(sink); }
void Learner::train_sup(const MetricsSink& sink) { impl_->train_sup(sink); }

void Learner::run(const MetricsSink& sink) {
  switch (config().method) {
    case Method::kSup:
      train_sup(sink);
      return;
    case Method::kOurs:
    case Method::kMcmcNoProj:
      train_stage1(sink);
      train_stage2(sink);
      return;
    case Method::kSsl:
    case Method::kNa:
      train_stage1(sink);
      if (config().baseline_stage2) train_stage2(sink);
      return;
  }
}

namespace {

nlohmann::ordered_json eval_json(const EvalMetrics& m) {
  nlohmann::ordered_json j;
  j["examples"] = m.examples;
  j["symbol_accuracy"] = m.symbol_accuracy();
  j["output_accuracy"] = m.output_accuracy();
  j["feasible_rate"] = m.feasible_rate();
  j["grounded"] = m.feasible;
  return j;
}

std::string csv_number(double v) {
  nlohmann::json j = v;
  return j.dump();
}

}  // namespace

std::string metrics_json_line(const EpochMetrics& m) {
  nlohmann::ordered_json j;
  j["stage"] = m.stage;
  j["epoch"] = m.epoch;
  j["gamma"] = m.gamma;
  j["train"] = eval_json(m.train);
  j["test"] = eval_json(m.test);
  j["acceptance_rate"] = m.acceptance_rate;
  j["escape_rate"] = m.escape_rate;
  j["updates"] = m.updates;
  j["pseudo_labeled"] = m.pseudo_labeled;
  return j.dump();
}

std::string metrics_csv_header() {
  return "stage,epoch,gamma,train_symbol_accuracy,train_output_accuracy,"
         "train_feasible_rate,grounded,test_symbol_accuracy,test_output_accuracy,"
         "test_feasible_rate,acceptance_rate,escape_rate,updates,pseudo_labeled";
}

std::string metrics_csv_row(const EpochMetrics& m) {
  std::string row = m.stage + "," + std::to_string(m.epoch) + "," + csv_number(m.gamma);
  for (double v : {m.train.symbol_accuracy(), m.train.output_accuracy(),
                   m.train.feasible_rate()}) {
    row += "," + csv_number(v);
  }
  row += "," + std::to_string(m.train.feasible);
  for (double v : {m.test.symbol_accuracy(), m.test.output_accuracy(),
                   m.test.feasible_rate(), m.acceptance_rate, m.escape_rate}) {
    row += "," + csv_number(v);
  }
  row += "," + std::to_string(m.updates) + "," + std::to_string(m.pseudo_labeled);
  return row;
}

std::string summary_json_line(const TrainConfig& config, const EvalMetrics& train,
                              const EvalMetrics& test) {
  nlohmann::ordered_json j;
  j["stage"] = "summary";
  j["task"] = to_string(config.task);
  j["method"] = to_string(config.method);
  j["seed"] = config.seed;
  j["train"] = eval_json(train);
  j["test"] = eval_json(test);
  return j.dump();
}

EvalMetrics Learner::evaluate_train() const { return impl_->evaluate_train(); }
EvalMetrics Learner::evaluate_test() const { return impl_->evaluate_test(); }
std::span<const double> Learner::parameters() const { return impl_->parameters(); }
Checkpoint Learner::checkpoint() const { return impl_->checkpoint(); }
void Learner::restore(const Checkpoint& checkpoint) { impl_->restore(checkpoint); }
std::size_t Learner::infeasible_chain_states() const {
  return impl_->infeasible_chain_states();
}
std::uint64_t Learner::infeasible_updates() const { return impl_->infeasible_updates(); }

}  // namespace softground
