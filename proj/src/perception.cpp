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


#include "softground/perception.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace softground {
namespace {

void check_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": expected size " +
                                std::to_string(want) + ", got " +
                                std::to_string(got));
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

Featurizer::Featurizer(int num_classes, int feature_dim, double scale,
                       double noise_sigma, std::uint64_t seed)
    : num_classes_(num_classes),
      feature_dim_(feature_dim),
      scale_(scale),
      noise_sigma_(noise_sigma) {
  if (num_classes <= 0 || feature_dim <= 0) {
    throw std::invalid_argument("featurizer needs positive class and feature counts");
  }
  if (noise_sigma < 0.0) throw std::invalid_argument("negative noise sigma");
  Rng rng = make_stream(seed, 0, /*salt=*/0x70726f746fULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  const bool orthogonal = num_classes <= feature_dim;
  while (static_cast<int>(prototypes_.size()) < num_classes) {
    Vector v(static_cast<std::size_t>(feature_dim));
    for (double& x : v) x = normal(rng);
    if (orthogonal) {
      // Gram-Schmidt against the accepted prototypes.
      for (const Vector& p : prototypes_) {
        const double c = dot(v, p);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * p[i];
      }
    }
    const double norm = std::sqrt(dot(v, v));
    if (norm < 1e-6) continue;
    for (double& x : v) x /= norm;
    prototypes_.push_back(std::move(v));
  }
}

Vector Featurizer::featurize(int symbol_class, Rng& rng) const {
  if (symbol_class < 0 || symbol_class >= num_classes_) {
    throw std::out_of_range("symbol class " + std::to_string(symbol_class) +
                            " outside 0.." + std::to_string(num_classes_ - 1));
  }
  std::normal_distribution<double> noise(0.0, 1.0);
  Vector out(prototypes_[static_cast<std::size_t>(symbol_class)]);
  for (double& x : out) x = scale_ * x + noise_sigma_ * noise(rng);
  return out;
}

int Featurizer::nearest_prototype(std::span<const double> features) const {
  check_size(features.size(), static_cast<std::size_t>(feature_dim_), "features");
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int c = 0; c < num_classes_; ++c) {
    double d = 0.0;
    const Vector& p = prototypes_[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double e = features[i] - scale_ * p[i];
      d += e * e;
    }
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

Mlp::Mlp(std::size_t input_dim, std::size_t hidden_dim, std::size_t output_dim)
    : input_dim_(input_dim),
      hidden_dim_(hidden_dim),
      output_dim_(output_dim),
      params_(hidden_dim * input_dim + hidden_dim + output_dim * hidden_dim +
                  output_dim,
              0.0) {
  if (input_dim == 0 || hidden_dim == 0 || output_dim == 0) {
    throw std::invalid_argument("network dimensions must be positive");
  }
}

void Mlp::init_glorot(Rng& rng) {
  set_zero();
  const double a1 = std::sqrt(6.0 / static_cast<double>(input_dim_ + hidden_dim_));
  const double a2 = std::sqrt(6.0 / static_cast<double>(hidden_dim_ + output_dim_));
  std::uniform_real_distribution<double> u1(-a1, a1);
  std::uniform_real_distribution<double> u2(-a2, a2);
  for (std::size_t i = w1(); i < b1(); ++i) params_[i] = u1(rng);
  for (std::size_t i = w2(); i < b2(); ++i) params_[i] = u2(rng);
}

void Mlp::set_zero() { std::fill(params_.begin(), params_.end(), 0.0); }

void Mlp::forward(std::span<const double> x, std::span<double> hidden,
                  std::span<double> out) const {
  check_size(x.size(), input_dim_, "network input");
  check_size(hidden.size(), hidden_dim_, "hidden buffer");
  check_size(out.size(), output_dim_, "output buffer");
  const double* w = params_.data() + w1();
  const double* b = params_.data() + b1();
  for (std::size_t h = 0; h < hidden_dim_; ++h) {
    double s = b[h];
    const double* row = w + h * input_dim_;
    for (std::size_t i = 0; i < input_dim_; ++i) s += row[i] * x[i];
    hidden[h] = std::tanh(s);
  }
  w = params_.data() + w2();
  b = params_.data() + b2();
  for (std::size_t o = 0; o < output_dim_; ++o) {
    double s = b[o];
    const double* row = w + o * hidden_dim_;
    for (std::size_t h = 0; h < hidden_dim_; ++h) s += row[h] * hidden[h];
    out[o] = s;
  }
}

Vector Mlp::forward(std::span<const double> x) const {
  Vector hidden(hidden_dim_);
  Vector out(output_dim_);
  forward(x, hidden, out);
  return out;
}

void Mlp::backward(std::span<const double> x, std::span<const double> d_out,
                   double weight, std::span<double> grad) const {
  check_size(d_out.size(), output_dim_, "output gradient");
  check_size(grad.size(), params_.size(), "parameter gradient");
  Vector hidden(hidden_dim_);
  Vector out(output_dim_);
  forward(x, hidden, out);

  Vector d_hidden(hidden_dim_, 0.0);
  const double* w2p = params_.data() + w2();
  double* g_w2 = grad.data() + w2();
  double* g_b2 = grad.data() + b2();
  for (std::size_t o = 0; o < output_dim_; ++o) {
    const double g = weight * d_out[o];
    if (g == 0.0) continue;
    g_b2[o] += g;
    double* grow = g_w2 + o * hidden_dim_;
    const double* wrow = w2p + o * hidden_dim_;
    for (std::size_t h = 0; h < hidden_dim_; ++h) {
      grow[h] += g * hidden[h];
      d_hidden[h] += g * wrow[h];
    }
  }
  double* g_w1 = grad.data() + w1();
  double* g_b1 = grad.data() + b1();
  for (std::size_t h = 0; h < hidden_dim_; ++h) {
    const double pre = d_hidden[h] * (1.0 - hidden[h] * hidden[h]);
    if (pre == 0.0) continue;
    g_b1[h] += pre;
    double* grow = g_w1 + h * input_dim_;
    for (std::size_t i = 0; i < input_dim_; ++i) grow[i] += pre * x[i];
  }
}

double LogSoftmaxTable::logp(std::span<const int> classes) const {
  check_size(classes.size(), positions(), "class assignment");
  double s = 0.0;
  for (std::size_t j = 0; j < classes.size(); ++j) {
    const int c = classes[j];
    if (c < 0 || static_cast<std::size_t>(c) >= num_classes) {
      throw std::invalid_argument("class index out of range");
    }
    s += at(j, c);
  }
  return s;
}

Vector log_softmax(std::span<const double> logits) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double v : logits) total += std::exp(v - m);
  const double lse = m + std::log(total);
  Vector out(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - lse;
  return out;
}

LogSoftmaxTable log_softmax_table(const ClassifierModel& model,
                                  std::span<const Vector> features) {
  LogSoftmaxTable table;
  table.num_classes = model.num_classes();
  table.values.reserve(features.size() * table.num_classes);
  for (const Vector& x : features) {
    const Vector row = log_softmax(model.net.forward(x));
    table.values.insert(table.values.end(), row.begin(), row.end());
  }
  return table;
}

double logp_discrete(const ClassifierModel& model,
                     std::span<const Vector> features,
                     std::span<const int> classes) {
  check_size(classes.size(), features.size(), "class assignment");
  return log_softmax_table(model, features).logp(classes);
}

std::vector<int> predict_argmax(const ClassifierModel& model,
                                std::span<const Vector> features) {
  std::vector<int> out;
  out.reserve(features.size());
  for (const Vector& x : features) {
    const Vector logits = model.net.forward(x);
    out.push_back(static_cast<int>(
        std::max_element(logits.begin(), logits.end()) - logits.begin()));
  }
  return out;
}

void accumulate_nll_grad(const ClassifierModel& model,
                         std::span<const Vector> features,
                         std::span<const int> classes, double weight,
                         std::span<double> grad) {
  check_size(classes.size(), features.size(), "class assignment");
  for (std::size_t j = 0; j < features.size(); ++j) {
    const int c = classes[j];
    if (c < 0 || static_cast<std::size_t>(c) >= model.num_classes()) {
      throw std::invalid_argument("class index out of range");
    }
    Vector signal = log_softmax(model.net.forward(features[j]));
    for (double& v : signal) v = std::exp(v);
    signal[static_cast<std::size_t>(c)] -= 1.0;
    model.net.backward(features[j], signal, weight, grad);
  }
}

Vector grad_nll(const ClassifierModel& model,
                std::span<const DiscreteSample> batch) {
  Vector grad(model.net.num_params(), 0.0);
  if (batch.empty()) return grad;
  const double w = 1.0 / static_cast<double>(batch.size());
  for (const DiscreteSample& s : batch) {
    accumulate_nll_grad(model, s.features, s.classes, w, grad);
  }
  return grad;
}

double logp_gaussian(std::span<const double> mean, std::span<const double> z,
                     double sigma) {
  check_size(z.size(), mean.size(), "gaussian sample");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  double sq = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double e = z[i] - mean[i];
    sq += e * e;
  }
  const double var = sigma * sigma;
  return -0.5 * sq / var -
         0.5 * static_cast<double>(z.size()) *
             std::log(2.0 * std::numbers::pi * var);
}

double logp_gaussian(const RegressorModel& model, std::span<const double> x,
                     std::span<const double> z) {
  return logp_gaussian(model.predict(x), z, model.sigma);
}

void accumulate_nll_grad(const RegressorModel& model,
                         std::span<const double> x, std::span<const double> z,
                         double weight, std::span<double> grad) {
  Vector signal = model.predict(x);
  check_size(z.size(), signal.size(), "regression target");
  const double inv_var = 1.0 / (model.sigma * model.sigma);
  for (std::size_t i = 0; i < signal.size(); ++i) {
    signal[i] = (signal[i] - z[i]) * inv_var;
  }
  model.net.backward(x, signal, weight, grad);
}

Vector grad_nll(const RegressorModel& model,
                std::span<const ContinuousSample> batch) {
  Vector grad(model.net.num_params(), 0.0);
  if (batch.empty()) return grad;
  const double w = 1.0 / static_cast<double>(batch.size());
  for (const ContinuousSample& s : batch) {
    accumulate_nll_grad(model, s.x, s.z, w, grad);
  }
  return grad;
}

std::string_view to_string(OptimizerKind kind) {
  return kind == OptimizerKind::kSgd ? "sgd" : "adam";
}

OptimizerKind parse_optimizer_kind(std::string_view name) {
  if (name == "sgd") return OptimizerKind::kSgd;
  if (name == "adam") return OptimizerKind::kAdam;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) +
                              "' (expected sgd or adam)");
}

void optimizer_step(std::span<double> params, OptimState& state,
                    std::span<const double> grad) {
  check_size(grad.size(), params.size(), "optimizer gradient");
  ++state.step;
  if (state.kind == OptimizerKind::kSgd) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      params[i] -= state.learning_rate * grad[i];
    }
    return;
  }
  if (state.m.empty()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  }
  check_size(state.m.size(), params.size(), "optimizer state");
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(state.beta1, t);
  const double c2 = 1.0 - std::pow(state.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grad[i];
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grad[i] * grad[i];
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    params[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
  }
}

void save_checkpoint(const std::filesystem::path& path,
                     const Checkpoint& checkpoint) {
  nlohmann::json doc;
  doc["format"] = "softground-checkpoint";
  doc["version"] = 1;
  doc["kind"] = checkpoint.kind;
  doc["seed"] = checkpoint.seed;
  doc["sigma"] = checkpoint.sigma;
  doc["input_dim"] = checkpoint.net.input_dim();
  doc["hidden_dim"] = checkpoint.net.hidden_dim();
  doc["output_dim"] = checkpoint.net.output_dim();
  const auto p = checkpoint.net.params();
  doc["params"] = std::vector<double>(p.begin(), p.end());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  out << doc.dump() << '\n';
  if (!out) throw std::runtime_error("failed writing checkpoint " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("corrupt checkpoint " + path.string() + ": " + e.what());
  }
  if (doc.value("format", "") != "softground-checkpoint") {
    throw std::runtime_error("not a checkpoint: " + path.string());
  }
  Checkpoint cp;
  cp.kind = doc.at("kind").get<std::string>();
  cp.seed = doc.at("seed").get<std::uint64_t>();
  cp.sigma = doc.at("sigma").get<double>();
  cp.net = Mlp(doc.at("input_dim").get<std::size_t>(),
               doc.at("hidden_dim").get<std::size_t>(),
               doc.at("output_dim").get<std::size_t>());
  const auto params = doc.at("params").get<std::vector<double>>();
  check_size(params.size(), cp.net.num_params(), "checkpoint parameters");
  std::copy(params.begin(), params.end(), cp.net.params().begin());
  return cp;
}

}  // namespace softground
