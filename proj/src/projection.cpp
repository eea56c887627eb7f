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

#include "softground/projection.hpp"

#include <algorithm>
#include <stdexcept>

namespace softground {

Projection::Projection(std::size_t total_dim, std::vector<std::size_t> dropped)
    : total_dim_(total_dim), dropped_(std::move(dropped)) {
  std::sort(dropped_.begin(), dropped_.end());
  dropped_.erase(std::unique(dropped_.begin(), dropped_.end()), dropped_.end());
  if (!dropped_.empty() && dropped_.back() >= total_dim_) {
    throw std::invalid_argument("projection drops an index outside the state");
  }
  for (std::size_t i = 0; i < total_dim_; ++i) {
    if (!std::binary_search(dropped_.begin(), dropped_.end(), i)) {
      kept_.push_back(i);
    }
  }
  if (kept_.empty()) {
    throw std::invalid_argument("projection must keep at least one component");
  }
}

bool Projection::is_dropped(std::size_t index) const {
  return std::binary_search(dropped_.begin(), dropped_.end(), index);
}

}  // namespace softground
