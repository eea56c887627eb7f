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

// Per-example Metropolis chains over the feasible set of a symbolic
// constraint. One step projects the current state, walks one component of
// the projection, completes the walked projection with the task's inverse
// projection solver and accepts the completion with probability
// min(1, (P(z')/P(z))^(1/gamma)).
//
// A task type satisfies GroundingTask; a log-density is any callable
// mapping a state to log P(z|x).

#ifndef SOFTGROUND_SAMPLER_HPP_
#define SOFTGROUND_SAMPLER_HPP_

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "softground/core.hpp"
#include "softground/projection.hpp"
#include "softground/rng.hpp"

namespace softground {

template <typename T>
concept GroundingTask = requires(const T& task, const typename T::State& s,
                                 const Projection& p, Rng& rng) {
  { task.state_dim() } -> std::convertible_to<std::size_t>;
  { task.feasible(s) } -> std::same_as<bool>;
  { task.initial_solution() } -> std::same_as<std::optional<typename T::State>>;
  { task.walk_projected(s, p, rng) } -> std::same_as<typename T::State>;
  { task.invert_projection(s, p) } -> std::same_as<std::optional<typename T::State>>;
};

template <typename F, typename State>
concept LogDensity = std::invocable<F&, const State&> &&
    std::convertible_to<std::invoke_result_t<F&, const State&>, double>;

template <typename State>
struct GroundingChain {
  std::size_t example_id = 0;
  State state;        // always feasible
  State initial;
  double logp = 0.0;  // log P(state|x) under the model last refreshed with
  std::uint64_t steps_taken = 0;
  std::uint64_t accepted = 0;
  std::uint64_t escapes = 0;  // accepted moves landing away from `initial`
  Rng rng;

  bool escaped() const { return state != initial; }
};

enum class ProposalKind { kAccepted, kRejectedByRatio, kRejectedUnsat };

template <typename State>
struct ProposalOutcome {
  ProposalKind kind = ProposalKind::kRejectedUnsat;
  std::optional<State> proposed;  // absent iff kind == kRejectedUnsat
};

// Derives the chain's random stream from (seed, example_id) and starts it at
// the task solver's first feasible state. Throws Unsatisfiable when the
// solver finds none.
template <GroundingTask Task>
GroundingChain<typename Task::State> init_chain(const Task& task,
                                                std::size_t example_id,
                                                std::uint64_t seed) {
  auto start = task.initial_solution();
  if (!start || !task.feasible(*start)) {
    throw Unsatisfiable("no feasible initial state for example " +
                        std::to_string(example_id));
  }
  GroundingChain<typename Task::State> chain;
  chain.example_id = example_id;
  chain.state = *start;
  chain.initial = *start;
  chain.rng = make_stream(seed, example_id, /*salt=*/0x636861696eULL);
  return chain;
}

// Recomputes the cached log-probability after a model update.
template <typename State, LogDensity<State> LogP>
void refresh(GroundingChain<State>& chain, LogP&& logp) {
  chain.logp = logp(chain.state);
}

// One projected Metropolis move. Expects chain.logp to be current. An
// unsatisfiable inversion counts as a rejected move.
template <GroundingTask Task, LogDensity<typename Task::State> LogP>
ProposalOutcome<typename Task::State> metropolis_step(
    GroundingChain<typename Task::State>& chain, const Task& task,
    const Projection& projection, LogP&& logp, Temperature gamma, Rng& rng) {
  using State = typename Task::State;
  ++chain.steps_taken;
  const State walked = task.walk_projected(chain.state, projection, rng);
  std::optional<State> next = task.invert_projection(walked, projection);
  if (!next) return {ProposalKind::kRejectedUnsat, std::nullopt};

  ProposalOutcome<State> outcome;
  const bool self_move = *next == chain.state;
  const double next_logp = self_move ? chain.logp : logp(*next);
  const double tau = acceptance_ratio(next_logp, chain.logp, gamma);
  const double nu = uniform01(rng);
  if (nu <= tau) {
    outcome.kind = ProposalKind::kAccepted;
    ++chain.accepted;
    if (!self_move) {
      chain.state = *next;
      chain.logp = next_logp;
      if (chain.state != chain.initial) ++chain.escapes;
    }
  } else {
    outcome.kind = ProposalKind::kRejectedByRatio;
  }
  outcome.proposed = std::move(next);
  return outcome;
}

// Refreshes the cached log-probability, then applies `steps` moves using the
// chain's own random stream.
template <GroundingTask Task, LogDensity<typename Task::State> LogP>
const typename Task::State& run_chain(
    GroundingChain<typename Task::State>& chain, const Task& task,
    const Projection& projection, LogP&& logp, Temperature gamma,
    std::size_t steps) {
  refresh(chain, logp);
  for (std::size_t t = 0; t < steps; ++t) {
    metropolis_step(chain, task, projection, logp, gamma, chain.rng);
  }
  return chain.state;
}

// Fraction of fresh chains whose state differs from their initial state after
// `steps_per_instance` moves. `logp_of(i)` returns the log-density for
// instance i.
template <GroundingTask Task, typename LogPFactory>
double connectivity_probe(std::span<const Task> tasks,
                          const Projection& projection, LogPFactory&& logp_of,
                          Temperature gamma, std::size_t steps_per_instance,
                          std::uint64_t seed) {
  if (tasks.empty()) return 0.0;
  std::size_t escaped = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    auto chain = init_chain(tasks[i], i, seed);
    auto logp = logp_of(i);
    run_chain(chain, tasks[i], projection, logp, gamma, steps_per_instance);
    if (chain.escaped()) ++escaped;
  }
  return static_cast<double>(escaped) / static_cast<double>(tasks.size());
}

}  // namespace softground

#endif  // SOFTGROUND_SAMPLER_HPP_
