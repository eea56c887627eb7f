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


#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "softground/hwf.hpp"
#include "softground/sampler.hpp"

using namespace softground;
using namespace softground::hwf;

namespace {

// Independent evaluator: fold * and / into terms first, then sum the terms.
Rational two_pass_eval(const Tokens& t) {
  std::vector<Rational> terms{Rational(digit_value(t[0]))};
  std::vector<int> signs{1};
  for (std::size_t i = 1; i < t.size(); i += 2) {
    const Rational d(digit_value(t[i + 1]));
    switch (t[i]) {
      case kTimes:
        terms.back() *= d;
        break;
      case kDivide:
        terms.back() /= d;
        break;
      default:
        terms.push_back(d);
        signs.push_back(t[i] == kPlus ? 1 : -1);
    }
  }
  Rational total(0);
  for (std::size_t k = 0; k < terms.size(); ++k) total += signs[k] * terms[k];
  return total;
}

Tokens random_tokens(std::size_t length, Rng& rng) {
  Tokens t(length);
  for (std::size_t i = 0; i < length; ++i) {
    t[i] = is_digit_slot(i) ? static_cast<Token>(uniform_index(rng, kNumDigits))
                            : kPlus + static_cast<Token>(uniform_index(rng, 4));
  }
  return t;
}

// Every well-formed expression of `length`, via an odometer.
template <typename Fn>
void for_each_expression(std::size_t length, Fn fn) {
  Tokens t(length);
  for (std::size_t i = 0; i < length; ++i) t[i] = is_digit_slot(i) ? 0 : kPlus;
  while (true) {
    fn(t);
    std::size_t k = length;
    while (k > 0) {
      const std::size_t i = k - 1;
      const Token last = is_digit_slot(i) ? kNumDigits - 1 : kDivide;
      if (t[i] != last) {
        ++t[i];
        break;
      }
      t[i] = is_digit_slot(i) ? 0 : kPlus;
      --k;
    }
    if (k == 0) return;
  }
}

// Task wrapper whose walk always sets one position to a fixed token.
struct ScriptedWalkTask : Task {
  std::size_t position;
  Token value;
  ScriptedWalkTask(const Instance& instance, std::size_t p, Token v)
      : Task(instance), position(p), value(v) {}
  State walk_projected(const State& s, const Projection&, Rng&) const {
    State next = s;
    next[position] = value;
    return next;
  }
};

}  // namespace

TEST_CASE("evaluation examples") {
  CHECK(eval_expr(parse_tokens("4*9+3+3")) == Rational(42));
  CHECK(eval_expr(parse_tokens("4*8+3+7")) == Rational(42));
  CHECK(eval_expr(parse_tokens("1+1+1+1")) == Rational(4));
  CHECK(eval_expr(parse_tokens("9/2*4-1")) == Rational(17));
  CHECK(eval_expr(parse_tokens("1/3")) == Rational(1, 3));
  CHECK(eval_expr(parse_tokens("8-6/4")) == Rational(13, 2));
  CHECK_THROWS_AS(eval_expr(Tokens{0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(eval_expr(Tokens{0, kPlus}), std::invalid_argument);
  CHECK_THROWS(parse_tokens("4%2"));
}

TEST_CASE("feasibility") {
  CHECK(feasible(parse_tokens("4*9+3+3"), Rational(42)));
  CHECK(feasible(parse_tokens("4*8+3+7"), Rational(42)));
  CHECK_FALSE(feasible(parse_tokens("1+1+1+1"), Rational(5)));
  CHECK_FALSE(feasible(Tokens{kPlus, 0, kPlus}, Rational(1)));
}

TEST_CASE("evaluator agrees with a two-pass evaluator") {
  Rng rng = make_stream(3, 0, 0);
  for (int i = 0; i < 10000; ++i) {
    const Tokens t = random_tokens(1 + 2 * uniform_index(rng, 7), rng);
    const Rational expected = two_pass_eval(t);
    REQUIRE(eval_expr(t) == expected);
    CHECK(feasible(t, expected));
    CHECK_FALSE(feasible(t, expected + Rational(1, 7)));
  }
}

TEST_CASE("evaluation is total on all short expressions") {
  std::size_t count = 0;
  for (std::size_t length : {1u, 3u, 5u}) {
    for_each_expression(length, [&](const Tokens& t) {
      CHECK_NOTHROW(eval_expr(t));
      ++count;
    });
  }
  CHECK(count == 9 + 9 * 4 * 9 + 9 * 4 * 9 * 4 * 9);
}

TEST_CASE("length-7 maximum is 6561") {
  Rational best(0);
  for_each_expression(7, [&](const Tokens& t) { best = std::max(best, two_pass_eval(t)); });
  CHECK(best == Rational(6561));
  CHECK_FALSE(initial_solution(Rational(10000)).has_value());
  CHECK(initial_solution(Rational(6561)) == parse_tokens("9*9*9*9"));
}

TEST_CASE("initial solutions are verified") {
  for (int y : {42, 4, 0, -8, 100}) {
    const auto s = initial_solution(Rational(y));
    REQUIRE(s.has_value());
    CHECK(eval_expr(*s) == Rational(y));
  }
  CHECK(initial_solution(Rational(1, 9), 3) == parse_tokens("1/9"));
}

TEST_CASE("enumeration is exhaustive and duplicate-free") {
  for (int y : {1, 5, 42}) {
    auto all = enumerate_feasible(Rational(y), 5, 100000);
    REQUIRE(all.has_value());
    std::set<Tokens> unique(all->begin(), all->end());
    CHECK(unique.size() == all->size());
    std::size_t brute = 0;
    for_each_expression(5, [&](const Tokens& t) {
      if (two_pass_eval(t) == Rational(y)) {
        ++brute;
        CHECK(unique.count(t) == 1);
      }
    });
    CHECK(brute == all->size());
  }
  CHECK_FALSE(enumerate_feasible(Rational(1), 5, 3).has_value());
}

TEST_CASE("inverse projection examples") {
  const Projection edge = edge_projection();
  CHECK(edge.dropped().size() == 2);
  CHECK(edge.dropped()[0] == 0);
  CHECK(edge.dropped()[1] == 6);

  // Dropped slot contents are ignored.
  Tokens projected = parse_tokens("1*8+3+1");
  CHECK(invert_projection(projected, edge, Rational(42)) == parse_tokens("4*8+3+7"));

  // 9*?*9*? has exactly one completion reaching 6561.
  const Projection inner(7, {2, 6});
  const Tokens pattern = parse_tokens("9*1*9*1");
  std::size_t completions = 0;
  for (Token a = 0; a < kNumDigits; ++a) {
    for (Token b = 0; b < kNumDigits; ++b) {
      Tokens t = pattern;
      t[2] = a;
      t[6] = b;
      if (two_pass_eval(t) == Rational(6561)) ++completions;
    }
  }
  CHECK(completions == 1);
  CHECK(invert_projection(pattern, inner, Rational(6561)) == parse_tokens("9*9*9*9"));

  const Projection none = Projection::identity(7);
  CHECK(invert_projection(parse_tokens("4*9+3+3"), none, Rational(42)) ==
        parse_tokens("4*9+3+3"));
  CHECK_FALSE(invert_projection(parse_tokens("4*9+3+4"), none, Rational(42)).has_value());
  CHECK_FALSE(invert_projection(parse_tokens("1+1+1+1"), default_projection(),
                                Rational(5000))
                  .has_value());
}

TEST_CASE("inverse projection round trip and fuzz") {
  Rng rng = make_stream(17, 0, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    const Instance inst = random_instance(7, rng);
    const Projection proj = trial % 2 ? default_projection() : edge_projection();
    // Inverting an unmodified projection returns a feasible state that agrees on
    // every kept component.
    const auto back = invert_projection(inst.gold, proj, inst.target);
    REQUIRE(back.has_value());
    CHECK(feasible(*back, inst.target));
    for (std::size_t i : proj.kept()) CHECK((*back)[i] == inst.gold[i]);

    const Tokens walked = walk_projected(inst.gold, proj, rng);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < 7; ++i) {
      if (walked[i] != inst.gold[i]) {
        ++changed;
        CHECK_FALSE(proj.is_dropped(i));
      }
    }
    CHECK(changed == 1);
    CHECK(well_formed(walked));
    if (auto next = invert_projection(walked, proj, inst.target)) {
      CHECK(feasible(*next, inst.target));
      for (std::size_t i : proj.kept()) CHECK((*next)[i] == walked[i]);
    }
  }
}

TEST_CASE("worked Metropolis move") {
  Instance inst;
  inst.target = Rational(42);
  inst.gold = parse_tokens("4*9+3+3");
  const ScriptedWalkTask task(inst, 2, digit_token(8));
  static_assert(GroundingTask<ScriptedWalkTask>);

  GroundingChain<Tokens> chain;
  chain.state = inst.gold;
  chain.initial = inst.gold;
  auto flat = [](const Tokens&) { return -3.0; };
  refresh(chain, flat);
  Rng rng = make_stream(0, 0, 0);
  const auto outcome = metropolis_step(chain, task, edge_projection(), flat,
                                       Temperature{1.0}, rng);
  CHECK(outcome.kind == ProposalKind::kAccepted);
  REQUIRE(outcome.proposed.has_value());
  CHECK(*outcome.proposed == parse_tokens("4*8+3+7"));
  CHECK(chain.state == parse_tokens("4*8+3+7"));
  CHECK(chain.escapes == 1);
}

TEST_CASE("token and rational formatting") {
  CHECK(format_tokens(parse_tokens("4x9:3-3")) == "4*9/3-3");
  CHECK(format_rational(Rational(-6, 4)) == "-3/2");
  CHECK(parse_rational("-3/2") == Rational(-3, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("random instances are consistent") {
  Rng rng = make_stream(1, 2, 3);
  for (int i = 0; i < 1000; ++i) {
    const Instance inst = random_instance(7, rng);
    CHECK(well_formed(inst.gold));
    CHECK(eval_expr(inst.gold) == inst.target);
  }
  CHECK_THROWS(random_instance(6, rng));
}
