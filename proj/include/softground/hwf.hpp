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

// Handwritten-formula evaluation: expressions d op d op ... d over digits
// 1-9 and the operators + - * /, evaluated exactly with standard
// precedence. A state is a token vector; the constraint is that the
// expression evaluates to the target.

#ifndef SOFTGROUND_HWF_HPP_
#define SOFTGROUND_HWF_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "softground/projection.hpp"
#include "softground/rng.hpp"

namespace softground::hwf {

using Rational = boost::rational<std::int64_t>;

// Token ids double as classifier class ids: 0..8 are the digits 1..9,
// 9..12 are + - * /.
using Token = int;
using Tokens = std::vector<Token>;

inline constexpr int kNumClasses = 13;
inline constexpr int kNumDigits = 9;
inline constexpr Token kPlus = 9;
inline constexpr Token kMinus = 10;
inline constexpr Token kTimes = 11;
inline constexpr Token kDivide = 12;
inline constexpr std::size_t kDefaultLength = 7;
inline constexpr std::size_t kMaxLength = 15;

constexpr bool is_digit(Token t) { return t >= 0 && t < kNumDigits; }
constexpr bool is_operator(Token t) { return t >= kPlus && t <= kDivide; }
constexpr Token digit_token(int digit) { return digit - 1; }
constexpr int digit_value(Token t) { return t + 1; }
// Even (0-based) positions hold digits, odd positions hold operators.
constexpr bool is_digit_slot(std::size_t position) { return position % 2 == 0; }

bool well_formed(std::span<const Token> tokens);

// Exact value. Throws std::invalid_argument when the digit/operator
// alternation is broken or the length is even or too long.
Rational eval_expr(std::span<const Token> tokens);

// Well-formed and evaluates exactly to `target`.
bool feasible(std::span<const Token> tokens, const Rational& target);

// First feasible expression of the given length in lexicographic order
// (position by position, digits ascending then operators in + - * / order).
std::optional<Tokens> initial_solution(const Rational& target,
                                       std::size_t length = kDefaultLength);

// Completes the dropped slots of `projected` (their current values are
// ignored) with type-consistent tokens, scanning fillings in lexicographic
// order with the lowest dropped position most significant. Returns the first
// feasible completion.
std::optional<Tokens> invert_projection(std::span<const Token> projected,
                                        const Projection& projection,
                                        const Rational& target);

// Changes one uniformly chosen kept position to a different token of the
// same type, uniformly among the alternatives.
Tokens walk_projected(std::span<const Token> tokens,
                      const Projection& projection, Rng& rng);

// Every feasible expression, in lexicographic order. Stops early and returns
// std::nullopt once more than `limit` solutions are found.
std::optional<std::vector<Tokens>> enumerate_feasible(const Rational& target,
                                                      std::size_t length,
                                                      std::size_t limit);

// Projection dropping the third and fifth symbols (0-based 2 and 4).
Projection default_projection(std::size_t length = kDefaultLength);
// Projection dropping the first and last digits.
Projection edge_projection(std::size_t length = kDefaultLength);

std::string format_tokens(std::span<const Token> tokens);
// Parses strings like "4*9+3+3"; also accepts 'x' for * and ':' for /.
Tokens parse_tokens(std::string_view text);

std::string format_rational(const Rational& value);  // "p/q"
Rational parse_rational(std::string_view text);

struct Instance {
  std::size_t length = kDefaultLength;
  Rational target;
  Tokens gold;  // evaluation only
};

// Uniformly random well-formed expression; its value becomes the target.
Instance random_instance(std::size_t length, Rng& rng);

// Binds one instance to the generic task contract used by the sampler.
class Task {
 public:
  using State = Tokens;

  explicit Task(const Instance& instance) : instance_(&instance) {}

  std::size_t state_dim() const { return instance_->length; }
  bool feasible(const State& state) const {
    return hwf::feasible(state, instance_->target);
  }
  std::optional<State> initial_solution() const {
    return hwf::initial_solution(instance_->target, instance_->length);
  }
  State walk_projected(const State& state, const Projection& projection,
                       Rng& rng) const {
    return hwf::walk_projected(state, projection, rng);
  }
  std::optional<State> invert_projection(const State& projected,
                                         const Projection& projection) const {
    return hwf::invert_projection(projected, projection, instance_->target);
  }
  std::optional<std::vector<State>> enumerate_feasible(std::size_t limit) const {
    return hwf::enumerate_feasible(instance_->target, instance_->length, limit);
  }

  const Instance& instance() const { return *instance_; }

 private:
  const Instance* instance_;
};

}  // namespace softground::hwf

#endif  // SOFTGROUND_HWF_HPP_
