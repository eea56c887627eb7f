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


// Connectivity diagnostics: how many fresh chains leave their initial
// feasible state within a step budget when the model is uniform.

#ifndef SOFTGROUND_PROBE_HPP_
#define SOFTGROUND_PROBE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>

#include "softground/core.hpp"
#include "softground/dataset.hpp"

namespace softground {

struct ProbeReport {
  std::string projection;  // name of the configured projection
  double projected_escape = 0.0;
  double identity_escape = 0.0;
  std::size_t instances = 0;
  std::size_t steps = 0;
};

// Runs the probe on `instances` freshly generated instances with the named
// projection and with the identity projection. The uniform model is the
// zero classifier, or the regressor predicting zero for graphs.
ProbeReport connectivity_report(TaskKind task, const DataParams& data,
                                const std::string& projection,
                                std::size_t instances, std::size_t steps,
                                Temperature gamma, std::uint64_t seed);

}  // namespace softground

#endif  // SOFTGROUND_PROBE_HPP_
