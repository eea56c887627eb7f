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


#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "softground/dataset.hpp"
#include "softground/trainer.hpp"

using namespace softground;

namespace {

std::vector<Record> data(TaskKind task, std::size_t n, std::size_t first = 0,
                         std::uint64_t seed = 1) {
  return generate_dataset(task, n, first, seed, 1, DataParams{});
}

TrainConfig small(TaskKind task, Method method = Method::kOurs) {
  TrainConfig c = default_train_config(task);
  c.method = method;
  c.stage1_epochs = 3;
  c.stage2_epochs = 2;
  c.batch_size = 8;
  return c;
}

std::vector<std::string> metric_lines(Learner& learner) {
  std::vector<std::string> lines;
  learner.run([&](const EpochMetrics& m) { lines.push_back(metrics_json_line(m)); });
  return lines;
}

void check_rates(const EvalMetrics& m) {
  for (double r : {m.feasible_rate(), m.output_accuracy(), m.symbol_accuracy()}) {
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
  }
  CHECK(m.feasible <= m.examples);
}

}  // namespace

TEST_CASE("method names and validation") {
  for (Method m : {Method::kOurs, Method::kSsl, Method::kNa, Method::kMcmcNoProj, Method::kSup}) {
    CHECK(parse_method(to_string(m)) == m);
  }
  CHECK_THROWS(parse_method("reinforce"));
  TrainConfig c = default_train_config(TaskKind::kHwf);
  c.method = Method::kMcmcNoProj;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = default_train_config(TaskKind::kSdsp);
  c.projection = "edge";
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = default_train_config(TaskKind::kHwf);
  c.workers = 0;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  CHECK_THROWS(Learner(default_train_config(TaskKind::kHwf), data(TaskKind::kSudoku, 2)));
}

TEST_CASE("temperature per method") {
  TrainConfig c = default_train_config(TaskKind::kHwf);
  for (std::uint64_t e : {0u, 10u, 150u}) {
    c.method = Method::kOurs;
    CHECK(stage1_gamma(c, e).gamma == gamma_at(c.schedule, e).gamma);
    c.method = Method::kSsl;
    CHECK(stage1_gamma(c, e).gamma == 1.0);
    c.method = Method::kNa;
    CHECK(stage1_gamma(c, e).gamma == 0.001);
  }
}

TEST_CASE("without sampling steps Stage I is a supervised step on the solver state") {
  TrainConfig c = default_train_config(TaskKind::kHwf);
  c.steps_per_example = 0;
  c.stage1_epochs = 1;
  const auto records = data(TaskKind::kHwf, 1);
  Learner learner(c, records);
  const std::vector<double> init(learner.parameters().begin(), learner.parameters().end());

  const auto& inst = std::get<hwf::Instance>(records[0].instance);
  const auto start = hwf::initial_solution(inst.target);
  REQUIRE(start.has_value());
  const auto seen =
      perceive(records[0], make_featurizer(TaskKind::kHwf, records[0].featurizer_seed, c.featurizer));
  ClassifierModel model(static_cast<std::size_t>(c.featurizer.feature_dim), c.hidden_units,
                        hwf::kNumClasses);
  std::copy(init.begin(), init.end(), model.net.params().begin());
  const std::vector<DiscreteSample> batch = {{seen.features, *start}};
  OptimState sgd = OptimState::sgd(c.stage1_learning_rate);
  optimizer_step(model.net.params(), sgd, grad_nll(model, batch));

  learner.train_stage1();
  const auto trained = learner.parameters();
  REQUIRE(trained.size() == model.net.num_params());
  for (std::size_t i = 0; i < trained.size(); ++i) {
    CHECK(trained[i] == doctest::Approx(model.net.params()[i]).epsilon(1e-12));
  }
}

TEST_CASE("runs are identical across worker counts") {
  for (TaskKind task : {TaskKind::kHwf, TaskKind::kSudoku, TaskKind::kSdsp}) {
    const auto train = data(task, 24), test = data(task, 8, 24);
    TrainConfig one = small(task);
    TrainConfig three = one;
    three.workers = 3;
    Learner a(one, train, test), b(three, train, test), c(one, train, test);
    const auto la = metric_lines(a), lb = metric_lines(b), lc = metric_lines(c);
    CHECK(la == lb);
    CHECK(la == lc);
    CHECK(std::equal(a.parameters().begin(), a.parameters().end(), b.parameters().begin(),
                     b.parameters().end()));
  }
}

TEST_CASE("weak supervision never trains on infeasible states") {
  for (TaskKind task : {TaskKind::kHwf, TaskKind::kSudoku, TaskKind::kSdsp}) {
    Learner l(small(task), data(task, 30), data(task, 10, 30));
    std::vector<EpochMetrics> epochs;
    l.run([&](const EpochMetrics& m) { epochs.push_back(m); });
    CHECK(l.infeasible_chain_states() == 0);
    CHECK(l.infeasible_updates() == 0);
    REQUIRE(epochs.size() == 5);
    for (std::size_t e = 0; e < epochs.size(); ++e) {
      check_rates(epochs[e].train);
      check_rates(epochs[e].test);
      CHECK(epochs[e].train.examples == 30);
      CHECK(epochs[e].acceptance_rate >= 0.0);
      CHECK(epochs[e].acceptance_rate <= 1.0);
      if (e < 3) {
        CHECK(epochs[e].stage == "stage1");
        CHECK(epochs[e].gamma == gamma_at(small(task).schedule, e).gamma);
      } else {
        CHECK(epochs[e].stage == "stage2");
        CHECK(epochs[e].gamma == 0.0);
        CHECK(epochs[e].pseudo_labeled <= 30);
      }
    }
  }
}

TEST_CASE("mcmc_noproj uses the value-permutation walk without projection") {
  TrainConfig c = small(TaskKind::kSudoku, Method::kMcmcNoProj);
  Learner l(c, data(TaskKind::kSudoku, 20));
  std::vector<EpochMetrics> epochs;
  l.run([&](const EpochMetrics& m) { epochs.push_back(m); });
  CHECK(l.infeasible_chain_states() == 0);
  CHECK(epochs.front().acceptance_rate > 0.0);
}

TEST_CASE("Stage II leaves the model alone when nothing is feasible") {
  TrainConfig c = small(TaskKind::kHwf);
  Learner l(c, data(TaskKind::kHwf, 20));
  Checkpoint zero = l.checkpoint();
  zero.net.set_zero();  // predicts digit 1 everywhere: never well formed
  l.restore(zero);
  std::vector<EpochMetrics> epochs;
  l.train_stage2([&](const EpochMetrics& m) { epochs.push_back(m); });
  for (double p : l.parameters()) CHECK(p == 0.0);
  REQUIRE(epochs.size() == 2);
  for (const auto& m : epochs) {
    CHECK(m.pseudo_labeled == 0);
    CHECK(m.updates == 0);
  }
}

TEST_CASE("evaluation on a hand-checked fixture") {
  const auto records = data(TaskKind::kHwf, 5, 0, 77);
  Learner l(small(TaskKind::kHwf), records, records);
  Checkpoint zero = l.checkpoint();
  zero.net.set_zero();
  l.restore(zero);
  // The zero model predicts class 0 (the digit 1) at every position, so a
  // symbol is right exactly when the gold token is a 1.
  std::size_t ones = 0;
  for (const auto& r : records) {
    for (int t : std::get<hwf::Instance>(r.instance).gold) ones += t == 0 ? 1 : 0;
  }
  const EvalMetrics m = l.evaluate_test();
  CHECK(m.examples == 5);
  CHECK(m.symbols == 35);
  CHECK(m.symbols_correct == ones);
  CHECK(m.feasible == 0);
  CHECK(m.output_correct == 0);
}

TEST_CASE("a gold-trained classifier scores perfectly") {
  TrainConfig c = small(TaskKind::kHwf, Method::kSup);
  c.featurizer.noise_sigma = 0.0;
  c.stage1_epochs = 150;
  const auto records = data(TaskKind::kHwf, 64);
  Learner l(c, records, records);
  l.run();
  const EvalMetrics m = l.evaluate_train();
  CHECK(m.symbol_accuracy() == 1.0);
  CHECK(m.output_accuracy() == 1.0);
  CHECK(m.feasible_rate() == 1.0);
}

TEST_CASE("sup with zero epochs keeps the initial model") {
  TrainConfig c = small(TaskKind::kSdsp, Method::kSup);
  c.stage1_epochs = 0;
  Learner l(c, data(TaskKind::kSdsp, 4));
  const std::vector<double> before(l.parameters().begin(), l.parameters().end());
  l.run();
  CHECK(std::equal(before.begin(), before.end(), l.parameters().begin()));
}

TEST_CASE("the supervised regressor fits its training distances") {
  TrainConfig c = default_train_config(TaskKind::kSdsp);
  c.method = Method::kSup;
  c.stage1_epochs = 300;
  c.batch_size = 16;
  Learner l(c, data(TaskKind::kSdsp, 32));
  l.run();
  CHECK(l.evaluate_train().symbol_accuracy() >= 0.95);
}

TEST_CASE("checkpoints restore evaluation exactly") {
  const auto train = data(TaskKind::kSudoku, 20), test = data(TaskKind::kSudoku, 10, 20);
  Learner a(small(TaskKind::kSudoku), train, test);
  a.run();
  Learner b(small(TaskKind::kSudoku), train, test);
  b.restore(a.checkpoint());
  CHECK(summary_json_line(a.config(), a.evaluate_train(), a.evaluate_test()) ==
        summary_json_line(b.config(), b.evaluate_train(), b.evaluate_test()));
  Checkpoint wrong = a.checkpoint();
  wrong.net = Mlp(3, 3, 3);
  CHECK_THROWS_AS(b.restore(wrong), std::invalid_argument);
}

TEST_CASE("metric records") {
  EpochMetrics m;
  m.stage = "stage1";
  m.epoch = 4;
  m.gamma = 0.5;
  m.train.examples = 10;
  m.train.feasible = 3;
  const std::string line = metrics_json_line(m);
  CHECK(line.find("\"stage\":\"stage1\"") != std::string::npos);
  CHECK(line.find('\n') == std::string::npos);
  const std::string header = metrics_csv_header();
  const std::string row = metrics_csv_row(m);
  CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));
}
