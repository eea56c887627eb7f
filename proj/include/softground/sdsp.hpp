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

// Single-destination shortest path. The latent state is a real vector of
// per-node distance estimates used as the heuristic of a greedy A* search
// whose queue holds a single node; the constraint is that this search finds
// a shortest source-destination path.

#ifndef SOFTGROUND_SDSP_HPP_
#define SOFTGROUND_SDSP_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "softground/projection.hpp"
#include "softground/rng.hpp"

namespace softground::sdsp {

inline constexpr int kMinWeight = 1;
inline constexpr int kMaxWeight = 9;
inline constexpr double kWalkHalfWidth = 5.0;

// Undirected weighted graph as a dense n x n matrix; 0 means no edge.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), weights_(n * n, 0) {}
  Graph(std::size_t n, std::vector<int> weights);

  std::size_t size() const { return n_; }
  int weight(std::size_t a, std::size_t b) const { return weights_[a * n_ + b]; }
  void set_edge(std::size_t a, std::size_t b, int w);
  const std::vector<int>& weights() const { return weights_; }
  bool connected() const;

 private:
  std::size_t n_ = 0;
  std::vector<int> weights_;
};

// Exact distances from every node to `destination`.
std::vector<double> dijkstra(const Graph& graph, std::size_t destination);

struct PathResult {
  bool success = false;
  std::vector<std::size_t> path;  // excludes the source node
  double cost = 0.0;
};

// Greedy best-first search with a queue of length one: from the current
// node, move to the unvisited neighbour m minimizing g(m) + z[m]; ties go to
// the lowest node id. Fails on a dead end or after n moves.
PathResult greedy_astar(const Graph& graph, std::size_t source,
                        std::size_t destination, std::span<const double> z);

struct Instance {
  Graph graph;
  std::size_t source = 0;
  std::size_t destination = 0;
  std::vector<double> exact;  // Dijkstra distances to destination
};

// Connected random graph: a random spanning tree plus each remaining pair
// joined with probability `edge_prob`; weights uniform in 1..9. Source and
// destination are distinct uniform nodes.
Instance random_instance(std::size_t n, double edge_prob, Rng& rng);

bool feasible(const Instance& instance, std::span<const double> z);

// Coordinate search over the dropped components. Candidate values are the
// integers 0..9(n-1) ordered by distance from the exact distance (lower value
// first on ties). Starting from the exact values, each dropped index is
// scanned in turn with the others held; the first feasible assignment wins.
// Kept components are never changed.
std::optional<std::vector<double>> invert_projection(
    const Instance& instance, std::span<const double> projected,
    const Projection& projection);

// Adds Uniform[-5, 5] noise to one uniformly chosen kept component.
std::vector<double> walk(std::span<const double> z,
                         const Projection& projection, Rng& rng);

// Drops every fifth node (0-based 4, 9, ...), leaving at least one kept.
Projection default_projection(std::size_t n);

class Task {
 public:
  using State = std::vector<double>;

  explicit Task(const Instance& instance) : instance_(&instance) {}

  std::size_t state_dim() const { return instance_->graph.size(); }
  bool feasible(const State& state) const {
    return sdsp::feasible(*instance_, state);
  }
  std::optional<State> initial_solution() const { return instance_->exact; }
  State walk_projected(const State& state, const Projection& projection,
                       Rng& rng) const {
    return walk(state, projection, rng);
  }
  std::optional<State> invert_projection(const State& projected,
                                         const Projection& projection) const {
    return sdsp::invert_projection(*instance_, projected, projection);
  }

  const Instance& instance() const { return *instance_; }

 private:
  const Instance* instance_;
};

}  // namespace softground::sdsp

#endif  // SOFTGROUND_SDSP_HPP_
