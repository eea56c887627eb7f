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

// Boltzmann grounding distributions over feasible symbol states, the
// Metropolis acceptance ratio, and temperature (cooling) schedules.
//
// Energy convention: the energy of a state is -log P(z|x). A grounding
// distribution at temperature gamma assigns each feasible state a weight
// proportional to exp(-energy / gamma) = P(z|x)^(1/gamma).

#ifndef SOFTGROUND_CORE_HPP_
#define SOFTGROUND_CORE_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace softground {

// Raised when a perception model hands back a non-finite log-probability.
class NumericalFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a symbolic constraint has no feasible state.
class Unsatisfiable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimensionless temperature. Strictly positive while annealing; zero only
// during the zero-temperature fine-tuning stage.
struct Temperature {
  double gamma = 1.0;

  static Temperature zero() { return Temperature{0.0}; }
  bool is_zero() const { return gamma == 0.0; }
};

struct StateEnergy {
  double energy = 0.0;

  static StateEnergy from_logp(double logp) { return StateEnergy{-logp}; }
  double logp() const { return -energy; }
};

enum class ScheduleKind { kLogarithmic, kExponential, kLinear };

std::string_view to_string(ScheduleKind kind);
ScheduleKind parse_schedule_kind(std::string_view name);

// Cooling schedule. Steps are counted in epochs by the trainer.
//   logarithmic: gamma0 / ln(step + e)
//   exponential: gamma0 * alpha^step
//   linear:      gamma0 - alpha * step
// Every emitted value is clamped to at least `floor`.
struct CoolingSchedule {
  ScheduleKind kind = ScheduleKind::kExponential;
  double gamma0 = 1.0;
  double alpha = 0.995;
  double floor = 1e-3;
};

Temperature gamma_at(const CoolingSchedule& schedule, std::uint64_t step);

// Unclamped ratio tau = exp((logp_new - logp_old) / gamma), computed in log
// space. A proposal is accepted when a uniform draw nu satisfies nu <= tau.
// Throws NumericalFault on non-finite inputs and std::invalid_argument when
// gamma is not positive.
double acceptance_ratio(double logp_new, double logp_old, Temperature gamma);

// softmax(logps / gamma) with max subtraction. Throws Unsatisfiable on an
// empty support.
std::vector<double> closed_form_grounding(std::span<const double> logps,
                                          Temperature gamma);

// log(sum(exp(values))), stable for large negative inputs.
double log_sum_exp(std::span<const double> values);

// A fully enumerated grounding distribution for one small instance.
template <typename State>
struct GroundingDistribution {
  std::vector<State> support;
  std::vector<double> logps;
  Temperature gamma;
  std::vector<double> probs;  // closed_form_grounding(logps, gamma)
};

// Total-variation distance between two probability vectors of equal length.
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace softground

#endif  // SOFTGROUND_CORE_HPP_
