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

// 4x4 Sudoku. Boards are row-major vectors of 16 values in 1..4, with 0
// marking an empty cell in partial boards.

#ifndef SOFTGROUND_SUDOKU_HPP_
#define SOFTGROUND_SUDOKU_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "softground/projection.hpp"
#include "softground/rng.hpp"

namespace softground::sudoku {

inline constexpr int kSide = 4;
inline constexpr int kCells = 16;
inline constexpr int kNumClasses = 4;

using Board = std::vector<int>;

constexpr int row_of(std::size_t cell) { return static_cast<int>(cell) / kSide; }
constexpr int col_of(std::size_t cell) { return static_cast<int>(cell) % kSide; }
constexpr int block_of(std::size_t cell) {
  return (row_of(cell) / 2) * 2 + col_of(cell) / 2;
}

// Every row, column and 2x2 block is a permutation of {1, 2, 3, 4}.
bool valid(std::span<const int> board);

// True when the filled cells of a partial board conflict with nothing.
bool consistent(std::span<const int> partial);

// First valid completion under row-major, value-ascending backtracking.
std::optional<Board> complete(std::span<const int> partial);

// All valid boards in backtracking order (288 of them).
std::vector<Board> enumerate_valid();

// Indices of the cells in block b (0 = top-left, 1 = top-right,
// 2 = bottom-left, 3 = bottom-right).
std::vector<std::size_t> block_cells(int block);

// Keeps the top-left and bottom-right blocks and drops the anti-diagonal
// pair.
Projection block_projection();

// Swaps the values of two distinct kept cells that are not fixed. Any two
// distinct cells differ in their row or their column.
Board walk_projected(std::span<const int> board, const Projection& projection,
                     std::span<const std::size_t> fixed_cells, Rng& rng);

// Picks two distinct values and exchanges every occurrence of them. Maps
// valid boards to valid boards.
Board value_permutation(std::span<const int> board, Rng& rng);

std::string format_board(std::span<const int> board);  // "2431/3142/..."

// A puzzle: the gold solution plus the cells whose values are revealed
// symbolically. Revealed cells carry no image and are never walked.
struct Instance {
  Board gold;                       // evaluation only
  std::vector<std::size_t> clues;   // sorted cell indices
};

// Uniformly random valid board with `num_clues` revealed cells.
Instance random_instance(std::size_t num_clues, Rng& rng);

enum class Walker { kBlockSwap, kValuePermutation };

class Task {
 public:
  using State = Board;

  explicit Task(const Instance& instance, Walker walker = Walker::kBlockSwap)
      : instance_(&instance), walker_(walker) {}

  std::size_t state_dim() const { return kCells; }
  bool feasible(const State& state) const;
  std::optional<State> initial_solution() const;
  State walk_projected(const State& state, const Projection& projection,
                       Rng& rng) const;
  std::optional<State> invert_projection(const State& projected,
                                         const Projection& projection) const;
  std::optional<std::vector<State>> enumerate_feasible(std::size_t limit) const;

  // Partial board holding only the revealed values.
  Board clue_board() const;
  const Instance& instance() const { return *instance_; }

 private:
  const Instance* instance_;
  Walker walker_;
};

}  // namespace softground::sudoku

#endif  // SOFTGROUND_SUDOKU_HPP_
