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

#include "biskm/weave.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "biskm/bits.hpp"
#include "biskm/errors.hpp"

namespace biskm {

void LayoutParams::validate() const {
  if (disp == 0 || !std::has_single_bit(disp)) {
    throw DataError("layout: disp must be a power of two, got " + std::to_string(disp));
  }
  if (difp == 0 || !std::has_single_bit(difp)) {
    throw DataError("layout: difp must be a power of two, got " + std::to_string(difp));
  }
  if (static_cast<std::uint64_t>(disp) * difp != line_bits) {
    throw DataError("layout: disp * difp must equal line_bits, got " +
                    std::to_string(disp) + " * " + std::to_string(difp) + " != " +
                    std::to_string(line_bits));
  }
  if (line_bits % 64 != 0) {
    throw DataError("layout: line_bits must be a multiple of 64, got " +
                    std::to_string(line_bits));
  }
}

WeaveGeometry WeaveGeometry::create(const LayoutParams& layout,
                                    std::uint64_t n_samples,
                                    std::uint32_t n_features) {
  layout.validate();
  if (n_samples == 0) throw DataError("weave: matrix has no rows");
  if (n_features == 0) throw DataError("weave: matrix has no columns");
  if (n_features > kMaxFeatures) {
    throw DataError("weave: " + std::to_string(n_features) +
                    " features exceed the layout bound of " +
                    std::to_string(kMaxFeatures));
  }
  WeaveGeometry g;
  g.layout = layout;
  g.n_samples = n_samples;
  g.n_features = n_features;
  g.n_chunks = (n_features + layout.difp - 1) / layout.difp;
  g.padded_features = static_cast<std::uint32_t>(g.n_chunks * layout.difp);
  g.n_batches = (n_samples + layout.disp - 1) / layout.disp;
  return g;
}

std::uint64_t WeaveGeometry::word_index(std::uint64_t batch, std::uint32_t plane,
                                        std::uint64_t chunk) const {
  if (batch >= n_batches) throw std::out_of_range("word_index: batch out of range");
  if (plane >= kBitPlanes) throw std::out_of_range("word_index: plane out of range");
  if (chunk >= n_chunks) throw std::out_of_range("word_index: chunk out of range");
  return (batch * kBitPlanes + plane) * n_chunks + chunk;
}

std::uint64_t WeaveGeometry::word_count() const {
  return n_batches * kBitPlanes * n_chunks;
}

std::uint64_t WeaveGeometry::words_for_precision(PrecisionLevel p) const {
  return n_batches * p.bits() * n_chunks;
}

WeavedMatrix weave(const FixedMatrix& m, const LayoutParams& layout) {
  WeavedMatrix w;
  w.geometry = WeaveGeometry::create(layout, m.rows, static_cast<std::uint32_t>(m.cols));
  const WeaveGeometry& g = w.geometry;
  const std::uint64_t lpw = g.lanes_per_word();
  w.lanes.assign(g.word_count() * lpw, 0);

  const std::uint32_t disp = layout.disp;
  const std::uint32_t difp = layout.difp;
  for (std::uint64_t i = 0; i < g.n_samples; ++i) {
    const std::uint64_t batch = i / disp;
    const std::uint32_t s_local = static_cast<std::uint32_t>(i % disp);
    const std::uint64_t batch_base = batch * kBitPlanes * g.n_chunks;
    for (std::uint32_t j = 0; j < g.n_features; ++j) {
      std::uint32_t raw = m.at(i, j);
      if (raw == 0) continue;
      const std::uint64_t chunk = j / difp;
      const std::uint32_t j_local = j % difp;
      const std::size_t bit = std::size_t{s_local} * difp + j_local;
      while (raw != 0) {
        const int low = std::countr_zero(raw);
        const std::uint32_t plane = 31 - static_cast<std::uint32_t>(low);
        const std::uint64_t word = batch_base + plane * g.n_chunks + chunk;
        set_bit(std::span<std::uint64_t>{w.lanes.data() + word * lpw, lpw}, bit);
        raw &= raw - 1;
      }
    }
  }
  return w;
}

FixedMatrix unweave(const WeavedMatrix& w, PrecisionLevel p) {
  const WeaveGeometry& g = w.geometry;
  FixedMatrix out;
  out.rows = g.n_samples;
  out.cols = g.n_features;
  out.values.assign(g.n_samples * g.n_features, 0);

  const std::uint32_t disp = g.layout.disp;
  const std::uint32_t difp = g.layout.difp;
  for (std::uint64_t batch = 0; batch < g.n_batches; ++batch) {
    for (std::uint32_t plane = 0; plane < p.bits(); ++plane) {
      const std::uint32_t plane_bit = std::uint32_t{1} << (31 - plane);
      for (std::uint64_t chunk = 0; chunk < g.n_chunks; ++chunk) {
        const auto lanes = w.word(g.word_index(batch, plane, chunk));
        for_each_set_bit(lanes, [&](std::size_t k) {
          const std::uint64_t i = batch * disp + k / difp;
          const std::uint64_t j = chunk * difp + k % difp;
          if (i < g.n_samples && j < g.n_features) {
            out.values[i * g.n_features + j] |= plane_bit;
          }
        });
      }
    }
  }
  return out;
}

}  // namespace biskm
