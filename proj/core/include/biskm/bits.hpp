// Copyright 2026 the biskm authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

namespace biskm {

// A memory word wider than 64 bits is stored as consecutive uint64_t lanes,
// lane l holding word bits [64*l, 64*l + 64), LSB-first within the lane.

/// Calls f(k) for every set bit k of a multi-lane word, ascending.
template <typename F>
inline void for_each_set_bit(std::span<const std::uint64_t> lanes, F&& f) {
  for (std::size_t l = 0; l < lanes.size(); ++l) {
    std::uint64_t m = lanes[l];
    while (m != 0) {
      f(l * 64 + static_cast<std::size_t>(std::countr_zero(m)));
      m &= m - 1;
    }
  }
}

/// Calls f(k - begin) for every set bit k in [begin, end) of a multi-lane
/// word, ascending. Used to pick one sample's row of bits out of a line.
template <typename F>
inline void for_each_set_bit_in_range(std::span<const std::uint64_t> lanes,
                                      std::size_t begin, std::size_t end,
                                      F&& f) {
  if (begin >= end) return;
  const std::size_t first_lane = begin / 64;
  const std::size_t last_lane = (end - 1) / 64;
  for (std::size_t l = first_lane; l <= last_lane; ++l) {
    std::uint64_t m = lanes[l];
    if (l == first_lane && begin % 64 != 0) m &= ~std::uint64_t{0} << (begin % 64);
    if (l == last_lane && end % 64 != 0) m &= ~std::uint64_t{0} >> (64 - end % 64);
    while (m != 0) {
      f(l * 64 + static_cast<std::size_t>(std::countr_zero(m)) - begin);
      m &= m - 1;
    }
  }
}

inline void set_bit(std::span<std::uint64_t> lanes, std::size_t k) {
  lanes[k / 64] |= std::uint64_t{1} << (k % 64);
}

inline bool test_bit(std::span<const std::uint64_t> lanes, std::size_t k) {
  return (lanes[k / 64] >> (k % 64)) & 1u;
}

}  // namespace biskm
