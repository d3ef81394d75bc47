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
//
// Counter-based generator for reproducible synthetic data: draw i of stream
// s under seed k is a pure function of (k, s, i), so generation order, row
// order, and threading cannot change the output. The mixer is the splitmix64
// finalizer over a Weyl sequence.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace biskm {

inline constexpr std::uint64_t kWeylStep = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

/// Raw 64-bit draw `counter` of a keyed stream.
constexpr std::uint64_t rng_at(std::uint64_t key, std::uint64_t counter) {
  return mix64(key + counter * kWeylStep);
}

/// Independent sub-stream key.
constexpr std::uint64_t rng_stream(std::uint64_t key, std::uint64_t stream) {
  return mix64(key ^ mix64(stream + 0x6a09e667f3bcc909ull));
}

/// Uniform draw in [0, 1) with 53 random bits.
inline double rng_uniform(std::uint64_t key, std::uint64_t counter) {
  return static_cast<double>(rng_at(key, counter) >> 11) * 0x1p-53;
}

/// Standard normal draw via Box-Muller on counters 2c and 2c+1.
inline double rng_normal(std::uint64_t key, std::uint64_t counter) {
  // First draw shifted into (0, 1] so the log stays finite.
  const double u1 =
      static_cast<double>((rng_at(key, 2 * counter) >> 11) + 1) * 0x1p-53;
  const double u2 = rng_uniform(key, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace biskm
