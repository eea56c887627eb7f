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

#include "softground/sdsp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace softground::sdsp {

Graph::Graph(std::size_t n, std::vector<int> weights)
    : n_(n), weights_(std::move(weights)) {
  if (weights_.size() != n_ * n_) {
    throw std::invalid_argument("adjacency matrix must be n x n");
  }
  for (std::size_t a = 0; a < n_; ++a) {
    if (weight(a, a) != 0) throw std::invalid_argument("self loops not allowed");
    for (std::size_t b = 0; b < n_; ++b) {
      const int w = weight(a, b);
      if (w != weight(b, a)) throw std::invalid_argument("graph must be undirected");
      if (w != 0 && (w < kMinWeight || w > kMaxWeight)) {
        throw std::invalid_argument("edge weight outside 1..9");
      }
    }
  }
}

void Graph::set_edge(std::size_t a, std::size_t b, int w) {
  weights_[a * n_ + b] = w;
  weights_[b * n_ + a] = w;
}

bool Graph::connected() const {
  if (n_ == 0) return true;
  std::vector<bool> seen(n_, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t a = stack.back();
    stack.pop_back();
    for (std::size_t b = 0; b < n_; ++b) {
      if (weight(a, b) != 0 && !seen[b]) {
        seen[b] = true;
        ++count;
        stack.push_back(b);
      }
    }
  }
  return count == n_;
}

std::vector<double> dijkstra(const Graph& graph, std::size_t destination) {
  const std::size_t n = graph.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[destination] = 0.0;
  queue.emplace(0.0, destination);
  while (!queue.empty()) {
    const auto [d, a] = queue.top();
    queue.pop();
    if (d > dist[a]) continue;
    for (std::size_t b = 0; b < n; ++b) {
      const int w = graph.weight(a, b);
      if (w == 0) continue;
      if (d + w < dist[b]) {
        dist[b] = d + w;
        queue.emplace(dist[b], b);
      }
    }
  }
  return dist;
}

PathResult greedy_astar(const Graph& graph, std::size_t source,
                        std::size_t destination, std::span<const double> z) {
  const std::size_t n = graph.size();
  if (z.size() != n) throw std::invalid_argument("heuristic length != node count");
  PathResult result;
  std::vector<bool> visited(n, false);
  std::size_t current = source;
  visited[current] = true;
  double g = 0.0;
  for (std::size_t step = 0; step < n && current != destination; ++step) {
    std::size_t best = n;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < n; ++m) {
      const int w = graph.weight(current, m);
      if (w == 0 || visited[m]) continue;
      const double score = g + w + z[m];
      if (score < best_score) {
        best_score = score;
        best = m;
      }
    }
    if (best == n) return result;
    g += graph.weight(current, best);
    current = best;
    visited[current] = true;
    result.path.push_back(current);
  }
  result.success = current == destination;
  result.cost = g;
  return result;
}

Instance random_instance(std::size_t n, double edge_prob, Rng& rng) {
  if (n < 2) throw std::invalid_argument("graph needs at least two nodes");
  std::uniform_int_distribution<int> weight(kMinWeight, kMaxWeight);
  std::bernoulli_distribution extra(edge_prob);
  Instance instance;
  instance.graph = Graph(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t parent = order[uniform_index(rng, i)];
    instance.graph.set_edge(order[i], parent, weight(rng));
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (instance.graph.weight(a, b) == 0 && extra(rng)) {
        instance.graph.set_edge(a, b, weight(rng));
      }
    }
  }
  instance.destination = uniform_index(rng, n);
  instance.source = uniform_index(rng, n - 1);
  if (instance.source >= instance.destination) ++instance.source;
  instance.exact = dijkstra(instance.graph, instance.destination);
  return instance;
}

bool feasible(const Instance& instance, std::span<const double> z) {
  if (z.size() != instance.graph.size()) return false;
  for (double v : z) {
    if (!std::isfinite(v)) return false;
  }
  const PathResult path =
      greedy_astar(instance.graph, instance.source, instance.destination, z);
  return path.success && path.cost == instance.exact[instance.source];
}

std::optional<std::vector<double>> invert_projection(
    const Instance& instance, std::span<const double> projected,
    const Projection& projection) {
  const std::size_t n = instance.graph.size();
  if (projected.size() != n || projection.total_dim() != n) {
    throw std::invalid_argument("projection does not match node count");
  }
  std::vector<double> z(projected.begin(), projected.end());
  for (std::size_t i : projection.dropped()) z[i] = instance.exact[i];
  if (feasible(instance, z)) return z;

  const int max_value = kMaxWeight * static_cast<int>(n - 1);
  for (std::size_t i : projection.dropped()) {
    const int center = static_cast<int>(std::lround(instance.exact[i]));
    // Offsets 0, -1, +1, -2, +2, ... clipped to the grid.
    for (int radius = 1; radius <= max_value; ++radius) {
      for (int candidate : {center - radius, center + radius}) {
        if (candidate < 0 || candidate > max_value) continue;
        z[i] = candidate;
        if (feasible(instance, z)) return z;
      }
    }
    z[i] = instance.exact[i];
  }
  return std::nullopt;
}

std::vector<double> walk(std::span<const double> z,
                         const Projection& projection, Rng& rng) {
  std::vector<double> next(z.begin(), z.end());
  const auto kept = projection.kept();
  const std::size_t i = kept[uniform_index(rng, kept.size())];
  next[i] += std::uniform_real_distribution<double>(-kWalkHalfWidth,
                                                    kWalkHalfWidth)(rng);
  return next;
}

Projection default_projection(std::size_t n) {
  std::vector<std::size_t> dropped;
  for (std::size_t i = 4; i < n; i += 5) dropped.push_back(i);
  if (dropped.size() == n) dropped.pop_back();
  return Projection(n, std::move(dropped));
}

}  // namespace softground::sdsp
