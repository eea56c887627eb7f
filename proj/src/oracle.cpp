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


#include "softground/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "softground/dataset.hpp"
#include "softground/sampler.hpp"

namespace softground {
namespace {

Vector expected_grad(const ClassifierModel& model, const HwfProbe& probe,
                     const GroundingDistribution<hwf::Tokens>& dist) {
  Vector grad(model.net.num_params(), 0.0);
  for (std::size_t k = 0; k < dist.support.size(); ++k) {
    accumulate_nll_grad(model, probe.features, dist.support[k], dist.probs[k], grad);
  }
  return grad;
}

double semantic_loss(const ClassifierModel& model, const HwfProbe& probe,
                     const std::vector<hwf::Tokens>& support) {
  const LogSoftmaxTable table = log_softmax_table(model, probe.features);
  std::vector<double> logps;
  logps.reserve(support.size());
  for (const hwf::Tokens& s : support) logps.push_back(table.logp(s));
  return -log_sum_exp(logps);
}

}  // namespace

hwf::Instance hwf_instance_for(const hwf::Rational& target, std::size_t length) {
  auto gold = hwf::initial_solution(target, length);
  if (!gold) {
    throw Unsatisfiable("no expression of length " + std::to_string(length) +
                        " evaluates to " + hwf::format_rational(target));
  }
  hwf::Instance inst;
  inst.length = length;
  inst.target = target;
  inst.gold = std::move(*gold);
  return inst;
}

double hwf_logp(const ClassifierModel& model, const HwfProbe& probe,
                std::span<const hwf::Token> state) {
  return logp_discrete(model, probe.features, state);
}

GroundingDistribution<hwf::Tokens> hwf_grounding_oracle(
    const ClassifierModel& model, const HwfProbe& probe, Temperature gamma) {
  const LogSoftmaxTable table = log_softmax_table(model, probe.features);
  return exact_grounding_oracle(
      hwf::Task(probe.instance),
      [&](const hwf::Tokens& s) { return table.logp(s); }, gamma);
}

double ssl_gradient_check(const ClassifierModel& model, const HwfProbe& probe,
                          Temperature gamma, double fd_step) {
  const auto dist = hwf_grounding_oracle(model, probe, gamma);
  const Vector analytic = expected_grad(model, probe, dist);

  ClassifierModel work = model;
  auto params = work.net.params();
  double worst = 0.0;
  for (std::size_t j = 0; j < params.size(); ++j) {
    const double saved = params[j];
    params[j] = saved + fd_step;
    const double up = semantic_loss(work, probe, dist.support);
    params[j] = saved - fd_step;
    const double down = semantic_loss(work, probe, dist.support);
    params[j] = saved;
    const double numeric = (up - down) / (2.0 * fd_step);
    worst = std::max(worst, std::abs(numeric - analytic[j]));
  }
  return worst;
}

ChainTvResult chain_distribution_tv(const ClassifierModel& model,
                                    const HwfProbe& probe,
                                    const Projection& projection,
                                    Temperature gamma, std::size_t burn_in,
                                    std::size_t samples, std::uint64_t seed,
                                    bool invert_acceptance) {
  const auto dist = hwf_grounding_oracle(model, probe, gamma);
  std::map<hwf::Tokens, std::size_t> index;
  for (std::size_t k = 0; k < dist.support.size(); ++k) index[dist.support[k]] = k;

  const hwf::Task task(probe.instance);
  auto chain = init_chain(task, 0, seed);
  const LogSoftmaxTable table = log_softmax_table(model, probe.features);
  auto logp = [&](const hwf::Tokens& s) {
    const double lp = table.logp(s);
    return invert_acceptance ? -lp : lp;
  };
  refresh(chain, logp);
  for (std::size_t t = 0; t < burn_in; ++t) {
    metropolis_step(chain, task, projection, logp, gamma, chain.rng);
  }
  const std::uint64_t accepted_before = chain.accepted;
  std::vector<double> freq(dist.support.size(), 0.0);
  for (std::size_t t = 0; t < samples; ++t) {
    metropolis_step(chain, task, projection, logp, gamma, chain.rng);
    freq[index.at(chain.state)] += 1.0;
  }
  for (double& f : freq) f /= static_cast<double>(samples);

  ChainTvResult result;
  result.tv = total_variation(freq, dist.probs);
  result.support = dist.support.size();
  result.samples = samples;
  result.acceptance_rate =
      samples == 0 ? 0.0
                   : static_cast<double>(chain.accepted - accepted_before) /
                         static_cast<double>(samples);
  return result;
}

double gradient_bias(const ClassifierModel& model, const HwfProbe& probe,
                     const Projection& projection, Temperature gamma,
                     std::size_t steps, std::size_t chains,
                     std::uint64_t seed) {
  const auto dist = hwf_grounding_oracle(model, probe, gamma);
  const Vector exact = expected_grad(model, probe, dist);

  const hwf::Task task(probe.instance);
  const LogSoftmaxTable table = log_softmax_table(model, probe.features);
  auto logp = [&](const hwf::Tokens& s) { return table.logp(s); };
  std::map<hwf::Tokens, std::size_t> visits;
  for (std::size_t c = 0; c < chains; ++c) {
    auto chain = init_chain(task, c, seed);
    run_chain(chain, task, projection, logp, gamma, steps);
    ++visits[chain.state];
  }
  Vector estimate(model.net.num_params(), 0.0);
  for (const auto& [state, count] : visits) {
    accumulate_nll_grad(model, probe.features, state,
                        static_cast<double>(count) / static_cast<double>(chains),
                        estimate);
  }
  double sq = 0.0;
  for (std::size_t j = 0; j < exact.size(); ++j) {
    const double d = estimate[j] - exact[j];
    sq += d * d;
  }
  return std::sqrt(sq);
}

HwfProbe make_hwf_probe(const hwf::Rational& target, std::size_t length,
                        std::uint64_t seed) {
  HwfProbe probe;
  probe.instance = hwf_instance_for(target, length);
  const FeaturizerParams geometry;
  const Featurizer featurizer(hwf::kNumClasses, geometry.feature_dim,
                              geometry.scale, geometry.noise_sigma, seed);
  Rng rng = make_stream(seed, 0, /*salt=*/0x70726f6265ULL);
  for (hwf::Token t : probe.instance.gold) {
    probe.features.push_back(featurizer.featurize(t, rng));
  }
  return probe;
}

std::vector<CheckResult> run_oracle_suite(const OracleSuiteParams& params) {
  const FeaturizerParams geometry;
  auto random_model = [&](std::uint64_t k) {
    ClassifierModel model(static_cast<std::size_t>(geometry.feature_dim), 64,
                          hwf::kNumClasses);
    Rng rng = make_stream(params.seed, k, /*salt=*/0x6d6f64656cULL);
    model.net.init_glorot(rng);
    return model;
  };
  std::vector<CheckResult> results;

  // Gradient identity on random length-3 expressions.
  double worst = 0.0;
  double weakest_control = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < params.models; ++k) {
    Rng rng = make_stream(params.seed, k, /*salt=*/0x746f79ULL);
    const hwf::Instance inst = hwf::random_instance(3, rng);
    HwfProbe probe = make_hwf_probe(inst.target, 3, params.seed + k);
    const ClassifierModel model = random_model(k);
    worst = std::max(worst, ssl_gradient_check(model, probe));
    weakest_control =
        std::min(weakest_control, ssl_gradient_check(model, probe, Temperature{2.0}));
  }
  results.push_back({"ssl_gradient_identity", worst, 1e-6, worst <= 1e-6,
                     std::to_string(params.models) + " random models, length 3"});
  results.push_back({"ssl_gradient_gamma2_control", weakest_control, 1e-6,
                     weakest_control > 1e-6,
                     "gamma = 2 must disagree with the semantic-loss gradient"});

  // Chain visit frequencies against the oracle: every completion of the
  // single dropped slot is unique, so the stationary law is exact.
  {
    const HwfProbe probe = make_hwf_probe(hwf::Rational(1), 3, params.seed);
    const ClassifierModel model = random_model(1000);
    const ChainTvResult r = chain_distribution_tv(
        model, probe, Projection(3, {0}), Temperature{1.0}, params.burn_in,
        params.samples, params.seed, params.invert_acceptance);
    std::ostringstream detail;
    detail << "|S| = " << r.support << ", " << r.samples
           << " samples, acceptance " << r.acceptance_rate;
    if (params.invert_acceptance) detail << ", inverted acceptance";
    results.push_back({"chain_distribution_tv", r.tv, 0.05, r.tv <= 0.05, detail.str()});
  }

  // Gradient bias after T steps, averaged over seeds.
  {
    const HwfProbe probe = make_hwf_probe(hwf::Rational(13), 5, params.seed);
    const ClassifierModel model = random_model(2000);
    const Projection projection(5, {0});
    std::vector<double> bias;
    for (std::size_t steps : {1, 10, 100}) {
      double total = 0.0;
      for (std::size_t s = 0; s < params.seeds; ++s) {
        total += gradient_bias(model, probe, projection, Temperature{1.0}, steps,
                               params.chains, params.seed * 1000003 + s);
      }
      bias.push_back(total / static_cast<double>(params.seeds));
    }
    const bool monotone = bias[0] >= bias[1] && bias[1] >= bias[2];
    std::ostringstream detail;
    detail << "T=1: " << bias[0] << ", T=10: " << bias[1] << ", T=100: " << bias[2];
    results.push_back({"gradient_bias_decay", bias[2], bias[0], monotone, detail.str()});
  }
  return results;
}

}  // namespace softground
