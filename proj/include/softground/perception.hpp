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

// Perception side of the learner: a synthetic featurizer standing in for
// symbol images, and two small networks with hand-derived gradients.
//
//   ClassifierModel  shared per-position softmax classifier, so that
//                    log P(z|x) = sum_j log softmax(net(x_j))[z_j]
//   RegressorModel   z ~ N(net(x), sigma^2 I) over per-node distances
//
// Both wrap Mlp, a single tanh hidden layer over a flat parameter buffer.

#ifndef SOFTGROUND_PERCEPTION_HPP_
#define SOFTGROUND_PERCEPTION_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "softground/rng.hpp"

namespace softground {

using Vector = std::vector<double>;

class Featurizer {
 public:
  // Prototypes are orthonormal when num_classes <= feature_dim and random
  // unit vectors otherwise; either way they are fixed by `seed`.
  Featurizer(int num_classes, int feature_dim, double scale,
             double noise_sigma, std::uint64_t seed);

  // scale * prototype[symbol_class] + N(0, noise_sigma^2) per coordinate.
  // Throws std::out_of_range for an unknown class.
  Vector featurize(int symbol_class, Rng& rng) const;

  int nearest_prototype(std::span<const double> features) const;

  int num_classes() const { return num_classes_; }
  int feature_dim() const { return feature_dim_; }
  double noise_sigma() const { return noise_sigma_; }
  const std::vector<Vector>& prototypes() const { return prototypes_; }

 private:
  int num_classes_;
  int feature_dim_;
  double scale_;
  double noise_sigma_;
  std::vector<Vector> prototypes_;
};

// y = W2 tanh(W1 x + b1) + b2. Parameters are stored as [W1 | b1 | W2 | b2]
// with row-major weight matrices.
class Mlp {
 public:
  Mlp() = default;
  Mlp(std::size_t input_dim, std::size_t hidden_dim, std::size_t output_dim);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t hidden_dim() const { return hidden_dim_; }
  std::size_t output_dim() const { return output_dim_; }
  std::size_t num_params() const { return params_.size(); }

  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  // Glorot-uniform weights, zero biases.
  void init_glorot(Rng& rng);
  void set_zero();

  void forward(std::span<const double> x, std::span<double> hidden,
               std::span<double> out) const;
  Vector forward(std::span<const double> x) const;

  // grad += weight * d(loss)/d(params), given d(loss)/d(out) at input x.
  void backward(std::span<const double> x, std::span<const double> d_out,
                double weight, std::span<double> grad) const;

 private:
  std::size_t w1() const { return 0; }
  std::size_t b1() const { return hidden_dim_ * input_dim_; }
  std::size_t w2() const { return b1() + hidden_dim_; }
  std::size_t b2() const { return w2() + output_dim_ * hidden_dim_; }

  std::size_t input_dim_ = 0;
  std::size_t hidden_dim_ = 0;
  std::size_t output_dim_ = 0;
  Vector params_;
};

struct ClassifierModel {
  Mlp net;

  ClassifierModel() = default;
  ClassifierModel(std::size_t feature_dim, std::size_t hidden_dim,
                  std::size_t num_classes)
      : net(feature_dim, hidden_dim, num_classes) {}

  std::size_t num_classes() const { return net.output_dim(); }
};

// Row-major [positions x classes] table of log-softmax outputs, so that the
// log-probability of any state of the same example is a sum of lookups.
struct LogSoftmaxTable {
  std::size_t num_classes = 0;
  Vector values;

  std::size_t positions() const {
    return num_classes == 0 ? 0 : values.size() / num_classes;
  }
  double at(std::size_t position, int symbol_class) const {
    return values[position * num_classes + static_cast<std::size_t>(symbol_class)];
  }
  // Throws std::invalid_argument on length mismatch or out-of-range class.
  double logp(std::span<const int> classes) const;
};

Vector log_softmax(std::span<const double> logits);

LogSoftmaxTable log_softmax_table(const ClassifierModel& model,
                                  std::span<const Vector> features);

// sum_j log softmax(net(features_j))[classes_j]; never positive.
double logp_discrete(const ClassifierModel& model,
                     std::span<const Vector> features,
                     std::span<const int> classes);

// Per-position argmax, ties to the lowest class index.
std::vector<int> predict_argmax(const ClassifierModel& model,
                                std::span<const Vector> features);

// grad += weight * d(-log P(classes|features))/d(params). The output-layer
// signal at each position is softmax - onehot.
void accumulate_nll_grad(const ClassifierModel& model,
                         std::span<const Vector> features,
                         std::span<const int> classes, double weight,
                         std::span<double> grad);

struct DiscreteSample {
  std::span<const Vector> features;
  std::span<const int> classes;
};

// Mean over the batch of the per-example negative log-likelihood gradient.
Vector grad_nll(const ClassifierModel& model,
                std::span<const DiscreteSample> batch);

struct RegressorModel {
  Mlp net;
  double sigma = 1.0;

  RegressorModel() = default;
  RegressorModel(std::size_t input_dim, std::size_t hidden_dim,
                 std::size_t output_dim, double sigma_)
      : net(input_dim, hidden_dim, output_dim), sigma(sigma_) {}

  Vector predict(std::span<const double> x) const { return net.forward(x); }
};

// -||z - mean||^2 / (2 sigma^2) - (d/2) ln(2 pi sigma^2)
double logp_gaussian(std::span<const double> mean, std::span<const double> z,
                     double sigma);
double logp_gaussian(const RegressorModel& model, std::span<const double> x,
                     std::span<const double> z);

// grad += weight * d(-log N(z; net(x), sigma^2))/d(params); the output
// signal is (net(x) - z) / sigma^2.
void accumulate_nll_grad(const RegressorModel& model,
                         std::span<const double> x, std::span<const double> z,
                         double weight, std::span<double> grad);

struct ContinuousSample {
  std::span<const double> x;
  std::span<const double> z;
};

Vector grad_nll(const RegressorModel& model,
                std::span<const ContinuousSample> batch);

enum class OptimizerKind { kSgd, kAdam };

std::string_view to_string(OptimizerKind kind);
OptimizerKind parse_optimizer_kind(std::string_view name);

struct OptimState {
  OptimizerKind kind = OptimizerKind::kSgd;
  double learning_rate = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  Vector m;
  Vector v;
  std::uint64_t step = 0;

  static OptimState sgd(double lr) {
    OptimState s;
    s.learning_rate = lr;
    return s;
  }
  static OptimState adam(double lr) {
    OptimState s;
    s.kind = OptimizerKind::kAdam;
    s.learning_rate = lr;
    return s;
  }
};

// SGD: p -= lr * g. Adam: bias-corrected moment update. Throws
// std::invalid_argument when shapes disagree.
void optimizer_step(std::span<double> params, OptimState& state,
                    std::span<const double> grad);

// Checkpoints are JSON documents holding the network shape, the run seed,
// sigma for regressors, and the parameters at full round-trip precision.
struct Checkpoint {
  std::string kind;  // "classifier" or "regressor"
  std::uint64_t seed = 0;
  double sigma = 1.0;
  Mlp net;
};

void save_checkpoint(const std::filesystem::path& path,
                     const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace softground

#endif  // SOFTGROUND_PERCEPTION_HPP_
