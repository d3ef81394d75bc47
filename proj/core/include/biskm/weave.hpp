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
// Bit-plane weaved layout.
//
// Samples are grouped into batches of `disp` rows and features into chunks of
// `difp` columns. For one (batch, chunk) pair the 32 bit planes of the
// disp x difp block of fixed-point values are stored as 32 consecutive memory
// lines, most significant plane first. Within a line, bit s*difp + j is bit
// plane t of sample s (batch-local) and feature j (chunk-local).
//
// Reading the first p planes of every (batch, chunk) pair yields exactly the
// p most significant bits of every value, so the memory traffic of a scan at
// precision p is p/32 of the full-precision traffic.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "biskm/fixedpoint.hpp"

namespace biskm {

/// Bit planes per value; fixed by the 32-bit fixed-point representation.
inline constexpr std::uint32_t kBitPlanes = 32;

/// Widest feature vector the hardware-shaped layout accepts.
inline constexpr std::uint32_t kMaxFeatures = 1024;

/// Geometry knobs of the weaved layout. The defaults mirror the reference
/// hardware: 512-bit lines holding 32 samples x 16 features.
struct LayoutParams {
  std::uint32_t disp = 32;       ///< samples per batch
  std::uint32_t difp = 16;       ///< features per chunk
  std::uint32_t line_bits = 512; ///< memory line width

  /// Throws DataError unless disp and difp are powers of two,
  /// disp * difp == line_bits, and line_bits is a multiple of 64.
  void validate() const;

  bool operator==(const LayoutParams&) const = default;
};

/// Shape bookkeeping for a weaved matrix: batch/chunk counts and the
/// word-address arithmetic.
struct WeaveGeometry {
  LayoutParams layout;
  std::uint64_t n_samples = 0;
  std::uint32_t n_features = 0;
  std::uint32_t padded_features = 0;
  std::uint64_t n_batches = 0;
  std::uint64_t n_chunks = 0;

  /// Validates the layout and derives the padded shape.
  /// Throws DataError for an empty matrix or more than kMaxFeatures columns.
  static WeaveGeometry create(const LayoutParams& layout, std::uint64_t n_samples,
                              std::uint32_t n_features);

  /// Flat index of the line holding plane t of (batch b, chunk f).
  /// Planes of one batch are contiguous and chunk-major so that a scan at
  /// precision p touches a prefix of each batch's lines.
  std::uint64_t word_index(std::uint64_t batch, std::uint32_t plane,
                           std::uint64_t chunk) const;

  /// Lines in the full layout: n_batches * 32 * n_chunks.
  std::uint64_t word_count() const;

  /// Lines a full scan touches at precision p: n_batches * p * n_chunks.
  std::uint64_t words_for_precision(PrecisionLevel p) const;

  std::uint64_t lanes_per_word() const { return layout.line_bits / 64; }

  bool operator==(const WeaveGeometry&) const = default;
};

/// A fixed-point matrix rearranged into the weaved layout. Lines are stored
/// as consecutive 64-bit lanes in word_index order.
struct WeavedMatrix {
  WeaveGeometry geometry;
  std::vector<std::uint64_t> lanes;

  std::span<const std::uint64_t> word(std::uint64_t index) const {
    const std::uint64_t lpw = geometry.lanes_per_word();
    return {lanes.data() + index * lpw, lpw};
  }

  bool operator==(const WeavedMatrix&) const = default;
};

/// Rearranges a fixed-point matrix into the weaved layout. Padding positions
/// (rows past n_samples in the last batch, columns past n_features in the
/// last chunk) are zero.
WeavedMatrix weave(const FixedMatrix& m, const LayoutParams& layout = {});

/// Recovers the matrix truncated to p bits, reading only the first p planes
/// of each (batch, chunk) pair. unweave(weave(m), 32) == m.
FixedMatrix unweave(const WeavedMatrix& w, PrecisionLevel p);

}  // namespace biskm
