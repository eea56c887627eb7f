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


#include "softground/probe.hpp"

#include <vector>

#include "softground/perception.hpp"
#include "softground/sampler.hpp"
#include "softground/trainer.hpp"

namespace softground {
namespace {

template <typename Task, typename Instance, typename LogP>
double escape_fraction(const std::vector<Instance>& instances,
                       const Projection& projection, LogP logp,
                       Temperature gamma, std::size_t steps,
                       std::uint64_t seed) {
  std::vector<Task> tasks;
  tasks.reserve(instances.size());
  for (const Instance& inst : instances) tasks.emplace_back(inst);
  return connectivity_probe(std::span<const Task>(tasks), projection,
                            [&](std::size_t) { return logp; }, gamma, steps, seed);
}

template <typename Instance>
std::vector<Instance> fresh(TaskKind task, const DataParams& data,
                            std::size_t count, std::uint64_t seed) {
  std::vector<Instance> out;
  out.reserve(count);
  for (Record& r : generate_dataset(task, count, 0, seed, 0, data)) {
    out.push_back(std::get<Instance>(std::move(r.instance)));
  }
  return out;
}

}  // namespace

ProbeReport connectivity_report(TaskKind task, const DataParams& data,
                                const std::string& projection,
                                std::size_t instances, std::size_t steps,
                                Temperature gamma, std::uint64_t seed) {
  TrainConfig config = default_train_config(task);
  config.projection = projection;
  validate(config);

  ProbeReport report;
  report.projection = projection;
  report.instances = instances;
  report.steps = steps;
  auto run = [&](const auto& insts, std::size_t dim, auto tag, auto logp) {
    using Task = typename decltype(tag)::type;
    using Instance = typename std::decay_t<decltype(insts)>::value_type;
    report.projected_escape = escape_fraction<Task, Instance>(
        insts, make_projection(config, dim), logp, gamma, steps, seed);
    report.identity_escape = escape_fraction<Task, Instance>(
        insts, Projection::identity(dim), logp, gamma, steps, seed);
  };
  switch (task) {
    case TaskKind::kHwf: {
      const auto insts = fresh<hwf::Instance>(task, data, instances, seed);
      run(insts, data.hwf_length, std::type_identity<hwf::Task>{},
          [](const hwf::Tokens&) { return 0.0; });
      break;
    }
    case TaskKind::kSudoku: {
      const auto insts = fresh<sudoku::Instance>(task, data, instances, seed);
      run(insts, sudoku::kCells, std::type_identity<sudoku::Task>{},
          [](const sudoku::Board&) { return 0.0; });
      break;
    }
    case TaskKind::kSdsp: {
      const auto insts = fresh<sdsp::Instance>(task, data, instances, seed);
      const std::vector<double> zero(data.sdsp_nodes, 0.0);
      run(insts, data.sdsp_nodes, std::type_identity<sdsp::Task>{},
          [zero](const std::vector<double>& z) { return logp_gaussian(zero, z, 1.0); });
      break;
    }
  }
  return report;
}

}  // namespace softground
