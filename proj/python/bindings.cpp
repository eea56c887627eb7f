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


// _softground: Python access to the grounding kernels, the task solvers,
// dataset generation, training and the oracle checks. Structured results
// cross the boundary as JSON text and are decoded by the softground package.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "softground/config.hpp"
#include "softground/core.hpp"
#include "softground/dataset.hpp"
#include "softground/hwf.hpp"
#include "softground/oracle.hpp"
#include "softground/probe.hpp"
#include "softground/sdsp.hpp"
#include "softground/sudoku.hpp"
#include "softground/trainer.hpp"

namespace py = pybind11;
using namespace softground;

namespace {

RunConfig config_from_text(const std::string& ini) {
  std::istringstream in(ini);
  return parse_run_config(in);
}

std::vector<std::string> generate_lines(const std::string& task, std::size_t count,
                                        std::size_t first_id, std::uint64_t seed,
                                        std::uint64_t featurizer_seed) {
  std::vector<std::string> lines;
  for (const Record& r : generate_dataset(parse_task_kind(task), count, first_id, seed,
                                          featurizer_seed, DataParams{})) {
    lines.push_back(to_json_line(r));
  }
  return lines;
}

std::vector<Record> parse_lines(const std::vector<std::string>& lines) {
  std::vector<Record> records;
  records.reserve(lines.size());
  for (const auto& line : lines) records.push_back(parse_record(line));
  return records;
}

// Generates both splits from the config and runs the configured protocol.
// Returns the per-epoch metric lines followed by the summary line.
std::vector<std::string> train_from_text(const std::string& ini) {
  const RunConfig config = config_from_text(ini);
  std::vector<std::string> lines;
  {
    py::gil_scoped_release release;
    auto train = generate_dataset(config.train.task, config.train_size, 0,
                                  config.train.seed, config.featurizer_seed, config.data);
    auto test = generate_dataset(config.train.task, config.test_size, config.train_size,
                                 config.train.seed, config.featurizer_seed, config.data);
    Learner learner(config.train, std::move(train), std::move(test));
    learner.run([&](const EpochMetrics& m) { lines.push_back(metrics_json_line(m)); });
    lines.push_back(
        summary_json_line(config.train, learner.evaluate_train(), learner.evaluate_test()));
  }
  return lines;
}

std::string oracle_checks(std::size_t models, std::size_t samples, std::size_t seeds,
                          std::uint64_t seed, bool negative_control) {
  OracleSuiteParams params;
  params.models = models;
  params.samples = samples;
  params.seeds = seeds;
  params.seed = seed;
  params.invert_acceptance = negative_control;
  std::vector<CheckResult> results;
  {
    py::gil_scoped_release release;
    results = run_oracle_suite(params);
  }
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : results) {
    out.push_back({{"name", r.name},
                   {"passed", r.passed},
                   {"value", r.value},
                   {"threshold", r.threshold},
                   {"detail", r.detail}});
  }
  return out.dump();
}

std::pair<std::int64_t, std::int64_t> hwf_eval(const std::string& expr) {
  const hwf::Rational v = hwf::eval_expr(hwf::parse_tokens(expr));
  return {v.numerator(), v.denominator()};
}

std::vector<std::string> hwf_solutions(const std::string& target, std::size_t length,
                                       std::size_t limit) {
  auto all = hwf::enumerate_feasible(hwf::parse_rational(target), length, limit);
  if (!all) throw std::length_error("more than " + std::to_string(limit) + " solutions");
  std::vector<std::string> out;
  for (const auto& t : *all) out.push_back(hwf::format_tokens(t));
  return out;
}

}  // namespace

PYBIND11_MODULE(_softground, m) {
  m.doc() = "softened symbol grounding kernels";

  py::register_exception<NumericalFault>(m, "NumericalFault", PyExc_ArithmeticError);
  py::register_exception<Unsatisfiable>(m, "Unsatisfiable", PyExc_ValueError);

  m.def(
      "closed_form_grounding",
      [](const std::vector<double>& logps, double gamma) {
        return closed_form_grounding(logps, Temperature{gamma});
      },
      py::arg("logps"), py::arg("gamma"),
      "Normalized P^(1/gamma) over a finite feasible set given log P.");
  m.def(
      "acceptance_ratio",
      [](double logp_new, double logp_old, double gamma) {
        return acceptance_ratio(logp_new, logp_old, Temperature{gamma});
      },
      py::arg("logp_new"), py::arg("logp_old"), py::arg("gamma"));
  m.def(
      "gamma_at",
      [](const std::string& kind, double gamma0, double alpha, double floor,
         std::uint64_t step) {
        CoolingSchedule s;
        s.kind = parse_schedule_kind(kind);
        s.gamma0 = gamma0;
        s.alpha = alpha;
        s.floor = floor;
        return gamma_at(s, step).gamma;
      },
      py::arg("kind"), py::arg("gamma0") = 1.0, py::arg("alpha") = 0.995,
      py::arg("floor") = 1e-3, py::arg("step") = 0);
  m.def("total_variation", [](const std::vector<double>& p, const std::vector<double>& q) {
    return total_variation(p, q);
  });

  m.def("hwf_eval", &hwf_eval, py::arg("expr"),
        "Exact value of an expression such as '3+4*2' as (numerator, denominator).");
  m.def(
      "hwf_feasible",
      [](const std::string& expr, const std::string& target) {
        return hwf::feasible(hwf::parse_tokens(expr), hwf::parse_rational(target));
      },
      py::arg("expr"), py::arg("target"));
  m.def("hwf_solutions", &hwf_solutions, py::arg("target"), py::arg("length"),
        py::arg("limit") = 100000);

  m.def("sudoku_valid", [](const std::vector<int>& board) { return sudoku::valid(board); });

  m.def(
      "sdsp_dijkstra",
      [](std::size_t n, std::vector<int> weights, std::size_t destination) {
        return sdsp::dijkstra(sdsp::Graph(n, std::move(weights)), destination);
      },
      py::arg("n"), py::arg("weights"), py::arg("destination"));
  m.def(
      "sdsp_greedy_astar",
      [](std::size_t n, std::vector<int> weights, std::size_t source,
         std::size_t destination, const std::vector<double>& z) {
        const auto r =
            sdsp::greedy_astar(sdsp::Graph(n, std::move(weights)), source, destination, z);
        return py::make_tuple(r.success, r.cost, r.path);
      },
      py::arg("n"), py::arg("weights"), py::arg("source"), py::arg("destination"),
      py::arg("z"));

  m.def("generate_dataset", &generate_lines, py::arg("task"), py::arg("count"),
        py::arg("first_id") = 0, py::arg("seed") = 0, py::arg("featurizer_seed") = 1,
        "JSONL records with default data parameters.");
  m.def(
      "roundtrip_dataset",
      [](const std::vector<std::string>& lines) {
        std::vector<std::string> out;
        for (const Record& r : parse_lines(lines)) out.push_back(to_json_line(r));
        return out;
      },
      py::arg("lines"));

  m.def(
      "default_config",
      [](const std::string& task, const std::string& method) {
        return render_config(default_run_config(parse_task_kind(task), parse_method(method)));
      },
      py::arg("task") = "hwf", py::arg("method") = "ours");
  m.def(
      "normalize_config",
      [](const std::string& ini) { return render_config(config_from_text(ini)); },
      py::arg("ini"));
  m.def("train", &train_from_text, py::arg("ini"));

  m.def("oracle_checks", &oracle_checks, py::arg("models") = 20,
        py::arg("samples") = 100000, py::arg("seeds") = 20, py::arg("seed") = 0,
        py::arg("negative_control") = false);
  m.def(
      "probe",
      [](const std::string& task, const std::string& projection, std::size_t instances,
         std::size_t steps, std::uint64_t seed) {
        const ProbeReport r = connectivity_report(parse_task_kind(task), DataParams{},
                                                  projection, instances, steps,
                                                  Temperature{1.0}, seed);
        return py::make_tuple(r.projected_escape, r.identity_escape);
      },
      py::arg("task"), py::arg("projection") = "default", py::arg("instances") = 2000,
      py::arg("steps") = 10, py::arg("seed") = 0);
}
