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

#include "softground/hwf.hpp"

#include <charconv>
#include <stdexcept>

namespace softground::hwf {
namespace {

// Unnormalized fraction. With single-digit divisors and at most kMaxLength
// tokens the numerator and denominator stay far inside int64, so the hot
// paths skip gcd reduction and compare by cross-multiplication.
struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

Frac add(Frac a, Frac b, int sign) {
  return Frac{a.num * b.den + sign * b.num * a.den, a.den * b.den};
}

bool equals(Frac a, const Rational& r) {
  return a.num * r.denominator() == r.numerator() * a.den;
}

// Running state of a left-to-right precedence evaluation: everything before
// the current multiplicative term has been folded into `sum`.
struct Accumulator {
  Frac sum{0, 1};
  Frac term{0, 1};
  int sign = 1;

  static Accumulator start(Token digit) {
    Accumulator acc;
    acc.term = Frac{digit_value(digit), 1};
    return acc;
  }

  Accumulator apply(Token op, Token digit) const {
    Accumulator next = *this;
    const std::int64_t v = digit_value(digit);
    switch (op) {
      case kTimes:
        next.term.num *= v;
        break;
      case kDivide:
        next.term.den *= v;
        break;
      default:
        next.sum = add(sum, term, sign);
        next.sign = op == kPlus ? 1 : -1;
        next.term = Frac{v, 1};
        break;
    }
    return next;
  }

  Frac result() const { return add(sum, term, sign); }
};

void check_length(std::size_t length) {
  if (length % 2 == 0 || length > kMaxLength) {
    throw std::invalid_argument("expression length must be odd and at most " +
                                std::to_string(kMaxLength));
  }
}

Frac eval_fast(std::span<const Token> tokens) {
  Accumulator acc = Accumulator::start(tokens[0]);
  for (std::size_t i = 1; i + 1 < tokens.size(); i += 2) {
    acc = acc.apply(tokens[i], tokens[i + 1]);
  }
  return acc.result();
}

// Depth-first enumeration in lexicographic order. `visit` returns false to
// stop the search; the return value reports whether the search was stopped.
template <typename Visit>
bool search(Tokens& tokens, std::size_t position, const Accumulator& acc,
            const Rational& target, Visit& visit) {
  if (position == tokens.size()) {
    if (equals(acc.result(), target)) return !visit(tokens);
    return false;
  }
  for (Token op = kPlus; op <= kDivide; ++op) {
    tokens[position] = op;
    for (Token d = 0; d < kNumDigits; ++d) {
      tokens[position + 1] = d;
      if (search(tokens, position + 2, acc.apply(op, d), target, visit)) {
        return true;
      }
    }
  }
  return false;
}

template <typename Visit>
void search_all(const Rational& target, std::size_t length, Visit visit) {
  check_length(length);
  Tokens tokens(length, 0);
  for (Token d = 0; d < kNumDigits; ++d) {
    tokens[0] = d;
    if (search(tokens, 1, Accumulator::start(d), target, visit)) return;
  }
}

Token token_from_char(char c) {
  if (c >= '1' && c <= '9') return digit_token(c - '0');
  switch (c) {
    case '+':
      return kPlus;
    case '-':
      return kMinus;
    case '*':
    case 'x':
      return kTimes;
    case '/':
    case ':':
      return kDivide;
    default:
      throw std::invalid_argument(std::string("unknown expression symbol '") +
                                  c + "'");
  }
}

}  // namespace

bool well_formed(std::span<const Token> tokens) {
  if (tokens.size() % 2 == 0 || tokens.size() > kMaxLength) return false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (is_digit_slot(i) ? !is_digit(tokens[i]) : !is_operator(tokens[i])) {
      return false;
    }
  }
  return true;
}

Rational eval_expr(std::span<const Token> tokens) {
  if (!well_formed(tokens)) {
    throw std::invalid_argument("malformed expression: " +
                                format_tokens(tokens));
  }
  const Frac value = eval_fast(tokens);
  return Rational(value.num, value.den);
}

bool feasible(std::span<const Token> tokens, const Rational& target) {
  return well_formed(tokens) && equals(eval_fast(tokens), target);
}

std::optional<Tokens> initial_solution(const Rational& target,
                                       std::size_t length) {
  std::optional<Tokens> found;
  search_all(target, length, [&](const Tokens& tokens) {
    found = tokens;
    return false;
  });
  return found;
}

std::optional<std::vector<Tokens>> enumerate_feasible(const Rational& target,
                                                      std::size_t length,
                                                      std::size_t limit) {
  std::vector<Tokens> all;
  bool overflow = false;
  search_all(target, length, [&](const Tokens& tokens) {
    if (all.size() == limit) {
      overflow = true;
      return false;
    }
    all.push_back(tokens);
    return true;
  });
  if (overflow) return std::nullopt;
  return all;
}

std::optional<Tokens> invert_projection(std::span<const Token> projected,
                                        const Projection& projection,
                                        const Rational& target) {
  if (projection.total_dim() != projected.size()) {
    throw std::invalid_argument("projection does not match expression length");
  }
  Tokens tokens(projected.begin(), projected.end());
  const auto dropped = projection.dropped();
  for (std::size_t i : projection.kept()) {
    const bool ok = is_digit_slot(i) ? is_digit(tokens[i])
                                     : is_operator(tokens[i]);
    if (!ok) return std::nullopt;
  }
  auto first_value = [](std::size_t slot) {
    return is_digit_slot(slot) ? Token{0} : kPlus;
  };
  auto last_value = [](std::size_t slot) {
    return is_digit_slot(slot) ? Token{kNumDigits - 1} : kDivide;
  };
  for (std::size_t slot : dropped) tokens[slot] = first_value(slot);
  if (!well_formed(tokens)) return std::nullopt;

  // Odometer over the dropped slots; the last dropped slot turns fastest.
  while (true) {
    if (equals(eval_fast(tokens), target)) return tokens;
    std::size_t k = dropped.size();
    while (k > 0) {
      const std::size_t slot = dropped[k - 1];
      if (tokens[slot] != last_value(slot)) {
        ++tokens[slot];
        break;
      }
      tokens[slot] = first_value(slot);
      --k;
    }
    if (k == 0) return std::nullopt;
  }
}

Tokens walk_projected(std::span<const Token> tokens,
                      const Projection& projection, Rng& rng) {
  Tokens next(tokens.begin(), tokens.end());
  const auto kept = projection.kept();
  const std::size_t slot = kept[uniform_index(rng, kept.size())];
  const Token current = next[slot];
  if (is_digit_slot(slot)) {
    Token pick = static_cast<Token>(uniform_index(rng, kNumDigits - 1));
    next[slot] = pick >= current ? pick + 1 : pick;
  } else {
    Token pick = kPlus + static_cast<Token>(uniform_index(rng, 3));
    next[slot] = pick >= current ? pick + 1 : pick;
  }
  return next;
}

Projection default_projection(std::size_t length) {
  return Projection(length, {2, 4});
}

Projection edge_projection(std::size_t length) {
  return Projection(length, {0, length - 1});
}

std::string format_tokens(std::span<const Token> tokens) {
  static constexpr char kOps[] = {'+', '-', '*', '/'};
  std::string out;
  for (Token t : tokens) {
    if (is_digit(t)) {
      out.push_back(static_cast<char>('0' + digit_value(t)));
    } else if (is_operator(t)) {
      out.push_back(kOps[t - kPlus]);
    } else {
      out.push_back('?');
    }
  }
  return out;
}

Tokens parse_tokens(std::string_view text) {
  Tokens tokens;
  for (char c : text) {
    if (c == ' ') continue;
    tokens.push_back(token_from_char(c));
  }
  return tokens;
}

std::string format_rational(const Rational& value) {
  return std::to_string(value.numerator()) + "/" +
         std::to_string(value.denominator());
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw std::invalid_argument("bad rational: " + std::string(text));
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return Rational(parse_int(text.substr(0, slash)), den);
}

Instance random_instance(std::size_t length, Rng& rng) {
  check_length(length);
  Instance instance;
  instance.length = length;
  instance.gold.resize(length);
  for (std::size_t i = 0; i < length; ++i) {
    instance.gold[i] =
        is_digit_slot(i) ? static_cast<Token>(uniform_index(rng, kNumDigits))
                         : kPlus + static_cast<Token>(uniform_index(rng, 4));
  }
  instance.target = eval_expr(instance.gold);
  return instance;
}

}  // namespace softground::hwf
