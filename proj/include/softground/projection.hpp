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

#ifndef SOFTGROUND_PROJECTION_HPP_
#define SOFTGROUND_PROJECTION_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace softground {

// Partition of state components into kept and dropped indices. The random
// walk moves kept components only; dropped components are recomputed by the
// task's inverse projection.
class Projection {
 public:
  // `dropped` may be unsorted and contain duplicates; it is normalized.
  // Throws std::invalid_argument on out-of-range indices or when nothing
  // would be kept.
  Projection(std::size_t total_dim, std::vector<std::size_t> dropped);

  static Projection identity(std::size_t total_dim) {
    return Projection(total_dim, {});
  }

  std::size_t total_dim() const { return total_dim_; }
  std::span<const std::size_t> dropped() const { return dropped_; }
  std::span<const std::size_t> kept() const { return kept_; }
  bool is_identity() const { return dropped_.empty(); }
  bool is_dropped(std::size_t index) const;

 private:
  std::size_t total_dim_;
  std::vector<std::size_t> dropped_;
  std::vector<std::size_t> kept_;
};

}  // namespace softground

#endif  // SOFTGROUND_PROJECTION_HPP_
