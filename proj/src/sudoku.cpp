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

#include "softground/sudoku.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace softground::sudoku {
namespace {

void check_size(std::span<const int> board) {
  if (board.size() != kCells) {
    throw std::invalid_argument("sudoku board must have 16 cells");
  }
}

// Bitmask bookkeeping of values already used per row, column and block.
struct Usage {
  std::array<unsigned, kSide> rows{};
  std::array<unsigned, kSide> cols{};
  std::array<unsigned, kSide> blocks{};

  bool allows(std::size_t cell, int value) const {
    const unsigned bit = 1u << value;
    return !(rows[row_of(cell)] & bit) && !(cols[col_of(cell)] & bit) &&
           !(blocks[block_of(cell)] & bit);
  }
  void toggle(std::size_t cell, int value) {
    const unsigned bit = 1u << value;
    rows[row_of(cell)] ^= bit;
    cols[col_of(cell)] ^= bit;
    blocks[block_of(cell)] ^= bit;
  }
};

std::optional<Usage> usage_of(std::span<const int> partial) {
  Usage usage;
  for (std::size_t cell = 0; cell < kCells; ++cell) {
    const int v = partial[cell];
    if (v == 0) continue;
    if (v < 1 || v > kSide || !usage.allows(cell, v)) return std::nullopt;
    usage.toggle(cell, v);
  }
  return usage;
}

template <typename Visit>
bool backtrack(Board& board, Usage& usage, std::size_t cell, Visit& visit) {
  while (cell < kCells && board[cell] != 0) ++cell;
  if (cell == kCells) return !visit(board);
  for (int v = 1; v <= kSide; ++v) {
    if (!usage.allows(cell, v)) continue;
    board[cell] = v;
    usage.toggle(cell, v);
    const bool stop = backtrack(board, usage, cell + 1, visit);
    usage.toggle(cell, v);
    board[cell] = 0;
    if (stop) return true;
  }
  return false;
}

}  // namespace

bool valid(std::span<const int> board) {
  check_size(board);
  if (std::any_of(board.begin(), board.end(),
                  [](int v) { return v < 1 || v > kSide; })) {
    return false;
  }
  return usage_of(board).has_value();
}

bool consistent(std::span<const int> partial) {
  check_size(partial);
  return usage_of(partial).has_value();
}

std::optional<Board> complete(std::span<const int> partial) {
  check_size(partial);
  auto usage = usage_of(partial);
  if (!usage) return std::nullopt;
  Board board(partial.begin(), partial.end());
  std::optional<Board> found;
  auto visit = [&](const Board& b) {
    found = b;
    return false;
  };
  backtrack(board, *usage, 0, visit);
  return found;
}

std::vector<Board> enumerate_valid() {
  Board board(kCells, 0);
  Usage usage;
  std::vector<Board> all;
  auto visit = [&](const Board& b) {
    all.push_back(b);
    return true;
  };
  backtrack(board, usage, 0, visit);
  return all;
}

std::vector<std::size_t> block_cells(int block) {
  const int r0 = (block / 2) * 2;
  const int c0 = (block % 2) * 2;
  std::vector<std::size_t> cells;
  for (int r = r0; r < r0 + 2; ++r) {
    for (int c = c0; c < c0 + 2; ++c) {
      cells.push_back(static_cast<std::size_t>(r * kSide + c));
    }
  }
  return cells;
}

Projection block_projection() {
  std::vector<std::size_t> dropped = block_cells(1);
  const auto bottom_left = block_cells(2);
  dropped.insert(dropped.end(), bottom_left.begin(), bottom_left.end());
  return Projection(kCells, std::move(dropped));
}

Board walk_projected(std::span<const int> board, const Projection& projection,
                     std::span<const std::size_t> fixed_cells, Rng& rng) {
  check_size(board);
  std::vector<std::size_t> movable;
  for (std::size_t cell : projection.kept()) {
    if (std::find(fixed_cells.begin(), fixed_cells.end(), cell) ==
        fixed_cells.end()) {
      movable.push_back(cell);
    }
  }
  Board next(board.begin(), board.end());
  if (movable.size() < 2) return next;
  const std::size_t a = uniform_index(rng, movable.size());
  std::size_t b = uniform_index(rng, movable.size() - 1);
  if (b >= a) ++b;
  std::swap(next[movable[a]], next[movable[b]]);
  return next;
}

Board value_permutation(std::span<const int> board, Rng& rng) {
  check_size(board);
  const int a = 1 + static_cast<int>(uniform_index(rng, kSide));
  int b = 1 + static_cast<int>(uniform_index(rng, kSide - 1));
  if (b >= a) ++b;
  Board next(board.begin(), board.end());
  for (int& v : next) {
    if (v == a) {
      v = b;
    } else if (v == b) {
      v = a;
    }
  }
  return next;
}

std::string format_board(std::span<const int> board) {
  std::string out;
  for (std::size_t cell = 0; cell < board.size(); ++cell) {
    if (cell > 0 && cell % kSide == 0) out.push_back('/');
    out.push_back(static_cast<char>('0' + board[cell]));
  }
  return out;
}

Instance random_instance(std::size_t num_clues, Rng& rng) {
  if (num_clues > kCells) {
    throw std::invalid_argument("more clues than cells");
  }
  // Uniform over all valid boards.
  static const std::vector<Board> kAll = enumerate_valid();
  Instance instance;
  instance.gold = kAll[uniform_index(rng, kAll.size())];
  std::vector<std::size_t> cells(kCells);
  for (std::size_t i = 0; i < kCells; ++i) cells[i] = i;
  std::shuffle(cells.begin(), cells.end(), rng);
  instance.clues.assign(cells.begin(), cells.begin() + num_clues);
  std::sort(instance.clues.begin(), instance.clues.end());
  return instance;
}

Board Task::clue_board() const {
  Board board(kCells, 0);
  for (std::size_t cell : instance_->clues) board[cell] = instance_->gold[cell];
  return board;
}

bool Task::feasible(const State& state) const {
  if (state.size() != kCells || !valid(state)) return false;
  for (std::size_t cell : instance_->clues) {
    if (state[cell] != instance_->gold[cell]) return false;
  }
  return true;
}

std::optional<Task::State> Task::initial_solution() const {
  return complete(clue_board());
}

Task::State Task::walk_projected(const State& state,
                                 const Projection& projection,
                                 Rng& rng) const {
  if (walker_ == Walker::kValuePermutation) {
    return value_permutation(state, rng);
  }
  return sudoku::walk_projected(state, projection, instance_->clues, rng);
}

std::optional<Task::State> Task::invert_projection(
    const State& projected, const Projection& projection) const {
  if (projection.is_identity()) {
    if (feasible(projected)) return projected;
    return std::nullopt;
  }
  Board partial = projected;
  for (std::size_t cell : projection.dropped()) partial[cell] = 0;
  for (std::size_t cell : instance_->clues) {
    if (partial[cell] != 0 && partial[cell] != instance_->gold[cell]) {
      return std::nullopt;
    }
    partial[cell] = instance_->gold[cell];
  }
  return complete(partial);
}

std::optional<std::vector<Task::State>> Task::enumerate_feasible(
    std::size_t limit) const {
  static const std::vector<Board> kAll = enumerate_valid();
  std::vector<State> out;
  for (const Board& board : kAll) {
    if (!feasible(board)) continue;
    if (out.size() == limit) return std::nullopt;
    out.push_back(board);
  }
  return out;
}

}  // namespace softground::sudoku
