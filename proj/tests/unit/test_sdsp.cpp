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


#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "softground/sampler.hpp"
#include "softground/sdsp.hpp"

using namespace softground;
using namespace softground::sdsp;

namespace {

std::vector<double> bellman_ford(const Graph& g, std::size_t destination) {
  const std::size_t n = g.size();
  std::vector<double> d(n, std::numeric_limits<double>::infinity());
  d[destination] = 0;
  for (std::size_t round = 0; round + 1 < n; ++round) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (g.weight(a, b) != 0) d[a] = std::min(d[a], d[b] + g.weight(a, b));
      }
    }
  }
  return d;
}

Instance make_instance(Graph g, std::size_t source, std::size_t destination) {
  Instance inst;
  inst.graph = std::move(g);
  inst.source = source;
  inst.destination = destination;
  inst.exact = dijkstra(inst.graph, destination);
  return inst;
}

// 0 -1- 1 -9- 3 and 0 -2- 2 -1- 3: the cheap first hop leads to the heavy
// edge.
Instance decoy() {
  Graph g(4);
  g.set_edge(0, 1, 1);
  g.set_edge(1, 3, 9);
  g.set_edge(0, 2, 2);
  g.set_edge(2, 3, 1);
  return make_instance(std::move(g), 0, 3);
}

}  // namespace

TEST_CASE("dijkstra") {
  Graph path(3);
  path.set_edge(0, 1, 1);
  path.set_edge(1, 2, 1);
  CHECK(dijkstra(path, 2) == std::vector<double>{2, 1, 0});

  Rng rng = make_stream(5, 0, 0);
  for (int i = 0; i < 500; ++i) {
    const Instance inst = random_instance(3 + uniform_index(rng, 12), 0.3, rng);
    CHECK(inst.exact[inst.destination] == 0.0);
    CHECK(inst.exact == bellman_ford(inst.graph, inst.destination));
  }
}

TEST_CASE("generated graphs") {
  Rng rng = make_stream(6, 0, 0);
  for (int i = 0; i < 500; ++i) {
    const Instance inst = random_instance(10, 0.2, rng);
    CHECK(inst.graph.connected());
    CHECK(inst.source != inst.destination);
    for (std::size_t a = 0; a < 10; ++a) {
      for (std::size_t b = 0; b < 10; ++b) {
        const int w = inst.graph.weight(a, b);
        CHECK((w == 0 || (w >= 1 && w <= 9)));
      }
    }
    CHECK(feasible(inst, inst.exact));
  }
  CHECK_THROWS(Graph(2, {0, 1, 2, 0}));
  CHECK_THROWS(Graph(2, {1, 0, 0, 0}));
  CHECK_THROWS(Graph(2, {0, 10, 10, 0}));
}

TEST_CASE("greedy search") {
  Rng rng = make_stream(7, 0, 0);
  for (int i = 0; i < 500; ++i) {
    const Instance inst = random_instance(10, 0.2, rng);
    const auto r = greedy_astar(inst.graph, inst.source, inst.destination, inst.exact);
    CHECK(r.success);
    CHECK(r.cost == inst.exact[inst.source]);
    CHECK(r.path.back() == inst.destination);
  }

  const Instance d = decoy();
  const auto self = greedy_astar(d.graph, 3, 3, std::vector<double>(4, 0.0));
  CHECK(self.success);
  CHECK(self.path.empty());
  CHECK(self.cost == 0.0);

  const auto zero = greedy_astar(d.graph, 0, 3, std::vector<double>(4, 0.0));
  CHECK((!zero.success || zero.cost > d.exact[0]));
  CHECK(zero.path == std::vector<std::size_t>{1, 3});
  CHECK_FALSE(feasible(d, std::vector<double>(4, 0.0)));
  CHECK(feasible(d, d.exact));

  // Ties go to the lower node id.
  Graph g(4);
  g.set_edge(0, 1, 1);
  g.set_edge(0, 2, 1);
  g.set_edge(1, 3, 1);
  g.set_edge(2, 3, 1);
  CHECK(greedy_astar(g, 0, 3, std::vector<double>(4, 0.0)).path ==
        std::vector<std::size_t>{1, 3});
}

TEST_CASE("feasibility corner cases") {
  Graph two(2);
  two.set_edge(0, 1, 4);
  const Instance single = make_instance(two, 0, 1);
  Rng rng = make_stream(8, 0, 0);
  for (int i = 0; i < 100; ++i) {
    CHECK(feasible(single, std::vector<double>{uniform01(rng) * 100 - 50, uniform01(rng) * 100 - 50}));
  }
  CHECK_FALSE(feasible(single, std::vector<double>{0.0, NAN}));

  std::size_t rejected = 0;
  for (int i = 0; i < 200; ++i) {
    const Instance inst = random_instance(10, 0.2, rng);
    std::vector<double> z = inst.exact;
    z[inst.destination] = 1e6;
    if (!feasible(inst, z)) ++rejected;
  }
  CHECK(rejected > 100);
}

TEST_CASE("inverse projection") {
  Rng rng = make_stream(9, 0, 0);
  const Projection p = default_projection(10);
  CHECK(p.dropped().size() == 2);
  CHECK(p.dropped()[0] == 4);
  CHECK(p.dropped()[1] == 9);
  std::size_t solved = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const Instance inst = random_instance(10, 0.2, rng);
    CHECK(invert_projection(inst, inst.exact, p) == inst.exact);
    const auto walked = walk(inst.exact, p, rng);
    if (auto z = invert_projection(inst, walked, p)) {
      ++solved;
      CHECK(feasible(inst, *z));
      for (std::size_t i : p.kept()) CHECK((*z)[i] == walked[i]);
    }
    if (trial < 200) {
      const Projection none = Projection::identity(10);
      CHECK(invert_projection(inst, walked, none).has_value() == feasible(inst, walked));
    }
  }
  CHECK(solved > 5000);
}

TEST_CASE("walk") {
  Rng rng = make_stream(10, 0, 0);
  const Projection p = default_projection(10);
  const std::vector<double> z(10, 3.0);
  double total = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const auto next = walk(z, p, rng);
    std::size_t changed = 0;
    for (std::size_t k = 0; k < 10; ++k) {
      if (next[k] != z[k]) {
        ++changed;
        CHECK_FALSE(p.is_dropped(k));
        CHECK(std::abs(next[k] - z[k]) <= kWalkHalfWidth);
        total += next[k] - z[k];
      }
    }
    CHECK(changed == 1);
  }
  // Uniform[-5, 5] has standard deviation 5/sqrt(3); allow five standard errors.
  CHECK(std::abs(total / draws) < 5.0 * (5.0 / std::sqrt(3.0)) / std::sqrt(draws));
}

TEST_CASE("chains stay feasible") {
  Rng rng = make_stream(11, 0, 0);
  for (int i = 0; i < 30; ++i) {
    const Instance inst = random_instance(10, 0.2, rng);
    const Task task(inst);
    auto chain = init_chain(task, static_cast<std::size_t>(i), 3);
    CHECK(chain.state == inst.exact);
    auto logp = [](const std::vector<double>& z) {
      double s = 0;
      for (double v : z) s -= 0.5 * v * v / 100.0;
      return s;
    };
    run_chain(chain, task, default_projection(10), logp, Temperature{1.0}, 100);
    CHECK(task.feasible(chain.state));
  }
}
