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


// Exact-enumeration oracles for small instances, used to check the sampler
// and the trainer against closed forms:
//
//   exact_grounding_oracle  the grounding distribution over an enumerated
//                           feasible set
//   ssl_gradient_check      the temperature-1 expected NLL gradient against
//                           a finite-difference gradient of
//                           -log sum_{z feasible} P(z|x)
//   chain_distribution_tv   long-run visit frequencies of one chain against
//                           the oracle
//   gradient_bias           distance between the chain-estimated and the
//                           exact expected gradient after T steps

#ifndef SOFTGROUND_ORACLE_HPP_
#define SOFTGROUND_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "softground/core.hpp"
#include "softground/hwf.hpp"
#include "softground/perception.hpp"
#include "softground/projection.hpp"

namespace softground {

inline constexpr std::size_t kMaxOracleSupport = 10000;

// Throws std::length_error when the feasible set exceeds `max_support` and
// Unsatisfiable when it is empty.
template <typename Task, typename LogP>
auto exact_grounding_oracle(const Task& task, LogP&& logp, Temperature gamma,
                            std::size_t max_support = kMaxOracleSupport) {
  using State = typename Task::State;
  auto support = task.enumerate_feasible(max_support);
  if (!support) {
    throw std::length_error("feasible set larger than " +
                            std::to_string(max_support) + " states");
  }
  GroundingDistribution<State> dist;
  dist.support = std::move(*support);
  dist.gamma = gamma;
  dist.logps.reserve(dist.support.size());
  for (const State& s : dist.support) dist.logps.push_back(logp(s));
  dist.probs = closed_form_grounding(dist.logps, gamma);
  return dist;
}

// An expression instance with per-position features, small enough to
// enumerate.
struct HwfProbe {
  hwf::Instance instance;
  std::vector<Vector> features;
};

// Instance with the given target whose gold expression is the solver's
// first solution. Throws Unsatisfiable when no expression of `length`
// reaches the target.
hwf::Instance hwf_instance_for(const hwf::Rational& target, std::size_t length);

// log P(z|x) under a per-position classifier.
double hwf_logp(const ClassifierModel& model, const HwfProbe& probe,
                std::span<const hwf::Token> state);

// Oracle distribution for a classifier on an expression instance.
GroundingDistribution<hwf::Tokens> hwf_grounding_oracle(
    const ClassifierModel& model, const HwfProbe& probe, Temperature gamma);

// Max-abs difference between E_{Q at gamma}[grad -log P(z|x)] and central
// differences (step `fd_step`) of -log sum_{z feasible} P(z|x). The two
// agree up to finite-difference error at gamma = 1.
double ssl_gradient_check(const ClassifierModel& model, const HwfProbe& probe,
                          Temperature gamma = Temperature{1.0},
                          double fd_step = 1e-5);

struct ChainTvResult {
  double tv = 0.0;
  std::size_t support = 0;
  std::size_t samples = 0;
  double acceptance_rate = 0.0;
};

// Runs one chain for `burn_in` steps and then records its state after each
// of `samples` further steps. With `invert_acceptance` the chain accepts with
// the reciprocal ratio, which targets the wrong distribution.
ChainTvResult chain_distribution_tv(const ClassifierModel& model,
                                    const HwfProbe& probe,
                                    const Projection& projection,
                                    Temperature gamma, std::size_t burn_in,
                                    std::size_t samples, std::uint64_t seed,
                                    bool invert_acceptance = false);

// Euclidean norm of mean_c grad(z_c) - E_Q[grad(z)], where z_c is the state
// of chain c after `steps` steps from the solver's initial state.
double gradient_bias(const ClassifierModel& model, const HwfProbe& probe,
                     const Projection& projection, Temperature gamma,
                     std::size_t steps, std::size_t chains,
                     std::uint64_t seed);

// Probe for `target` whose features are drawn from the prototypes of the
// gold tokens with the default featurizer geometry.
HwfProbe make_hwf_probe(const hwf::Rational& target, std::size_t length,
                        std::uint64_t seed);

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

struct OracleSuiteParams {
  std::size_t models = 20;       // random (model, instance) pairs
  std::size_t samples = 100000;  // chain samples after burn-in
  std::size_t burn_in = 1000;
  std::size_t seeds = 20;        // gradient-bias repetitions
  std::size_t chains = 500;      // chains per gradient-bias estimate
  std::uint64_t seed = 0;
  bool invert_acceptance = false;  // negative control for the chain check
};

// Runs the gradient identity, its gamma = 2 control, the chain distribution
// check and the gradient-bias decay check.
std::vector<CheckResult> run_oracle_suite(const OracleSuiteParams& params);

}  // namespace softground

#endif  // SOFTGROUND_ORACLE_HPP_
