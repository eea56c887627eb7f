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

#include "softground/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace softground {

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::kLogarithmic:
      return "log";
    case ScheduleKind::kExponential:
      return "exp";
    case ScheduleKind::kLinear:
      return "linear";
  }
  return "?";
}

ScheduleKind parse_schedule_kind(std::string_view name) {
  if (name == "log" || name == "logarithmic") return ScheduleKind::kLogarithmic;
  if (name == "exp" || name == "exponential") return ScheduleKind::kExponential;
  if (name == "linear") return ScheduleKind::kLinear;
  throw std::invalid_argument("unknown cooling schedule: " + std::string(name));
}

Temperature gamma_at(const CoolingSchedule& schedule, std::uint64_t step) {
  const double t = static_cast<double>(step);
  double gamma = schedule.gamma0;
  switch (schedule.kind) {
    case ScheduleKind::kLogarithmic:
      // Shifted by e so that step 0 yields gamma0 exactly.
      gamma = step == 0 ? schedule.gamma0
                        : schedule.gamma0 / std::log(t + std::numbers::e);
      break;
    case ScheduleKind::kExponential:
      gamma = schedule.gamma0 * std::pow(schedule.alpha, t);
      break;
    case ScheduleKind::kLinear:
      gamma = schedule.gamma0 - schedule.alpha * t;
      break;
  }
  return Temperature{std::max(gamma, schedule.floor)};
}

double acceptance_ratio(double logp_new, double logp_old, Temperature gamma) {
  if (!std::isfinite(logp_new) || !std::isfinite(logp_old)) {
    throw NumericalFault("non-finite log-probability from perception model");
  }
  if (!(gamma.gamma > 0.0)) {
    throw std::invalid_argument("acceptance ratio needs a positive temperature");
  }
  const double log_tau = (logp_new - logp_old) / gamma.gamma;
  // exp saturates to +inf for huge log_tau, which still means "accept".
  return std::exp(log_tau);
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double peak = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

std::vector<double> closed_form_grounding(std::span<const double> logps,
                                          Temperature gamma) {
  if (logps.empty()) {
    throw Unsatisfiable("grounding distribution over an empty support");
  }
  if (!(gamma.gamma > 0.0)) {
    throw std::invalid_argument("grounding distribution needs gamma > 0");
  }
  for (double lp : logps) {
    if (!std::isfinite(lp)) {
      throw NumericalFault("non-finite log-probability in grounding support");
    }
  }
  std::vector<double> scaled(logps.size());
  std::transform(logps.begin(), logps.end(), scaled.begin(),
                 [&](double lp) { return lp / gamma.gamma; });
  const double peak = *std::max_element(scaled.begin(), scaled.end());
  double total = 0.0;
  for (double& s : scaled) {
    s = std::exp(s - peak);
    total += s;
  }
  for (double& s : scaled) s /= total;
  return scaled;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("total_variation: length mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

}  // namespace softground
