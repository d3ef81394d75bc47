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

#include <cstddef>
#include <thread>
#include <vector>

namespace biskm {

/// Splits [0, n) into at most `workers` contiguous ranges and calls
/// fn(slot, begin, end) for each, one range per thread. Slots are dense from
/// zero so callers can keep per-worker state and merge it in slot order.
/// With one worker (or one range) fn runs inline on the calling thread.
///
/// fn must only touch state owned by its slot or disjoint output regions;
/// everything else about determinism is the caller's contract.
template <typename F>
void parallel_ranges(std::size_t n, unsigned workers, F&& fn) {
  if (n == 0) return;
  std::size_t parts = workers == 0 ? 1 : workers;
  if (parts > n) parts = n;
  const std::size_t chunk = (n + parts - 1) / parts;
  if (parts == 1) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(parts);
  for (std::size_t slot = 0; slot < parts; ++slot) {
    const std::size_t begin = slot * chunk;
    const std::size_t end = begin + chunk < n ? begin + chunk : n;
    threads.emplace_back([&fn, slot, begin, end] { fn(slot, begin, end); });
  }
  for (std::thread& t : threads) t.join();
}

/// Number of range slots parallel_ranges(n, workers, ...) will use.
inline std::size_t parallel_slots(std::size_t n, unsigned workers) {
  if (n == 0) return 0;
  std::size_t parts = workers == 0 ? 1 : workers;
  return parts > n ? n : parts;
}

}  // namespace biskm
