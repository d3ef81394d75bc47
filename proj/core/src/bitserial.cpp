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

#include "biskm/bitserial.hpp"

#include <stdexcept>
#include <string>

#include "biskm/bits.hpp"
#include "biskm/errors.hpp"

namespace biskm {

uint128 norm_sq(std::span<const std::uint32_t> coords) {
  uint128 total = 0;
  for (std::uint32_t c : coords) {
    total += static_cast<uint128>(std::uint64_t{c} * c);
  }
  return total;
}

void CenterSet::refresh_norms() {
  norms.resize(count);
  for (std::size_t k = 0; k < count; ++k) norms[k] = norm_sq(row(k));
}

Score bis_dot(const WeavedMatrix& w, std::uint64_t sample, const CenterVector& c,
              PrecisionLevel p) {
  const WeaveGeometry& g = w.geometry;
  if (sample >= g.n_samples) throw std::out_of_range("bis_dot: sample out of range");
  if (c.coords.size() != g.padded_features) {
    throw DataError("bis_dot: center has " + std::to_string(c.coords.size()) +
                    " coordinates, layout expects " +
                    std::to_string(g.padded_features));
  }

  const std::uint32_t difp = g.layout.difp;
  const std::uint64_t batch = sample / g.layout.disp;
  const std::size_t row_begin =
      static_cast<std::size_t>(sample % g.layout.disp) * difp;
  const std::uint64_t batch_base = batch * kBitPlanes * g.n_chunks;

  uint128 acc = 0;
  for (std::uint32_t t = 0; t < p.bits(); ++t) {
    std::uint64_t plane_sum = 0;
    const std::uint64_t plane_base = batch_base + std::uint64_t{t} * g.n_chunks;
    for (std::uint64_t f = 0; f < g.n_chunks; ++f) {
      const auto lanes = w.word(plane_base + f);
      for_each_set_bit_in_range(lanes, row_begin, row_begin + difp,
                                [&](std::size_t j_local) {
                                  plane_sum += c.coords[f * difp + j_local];
                                });
    }
    acc = (acc << 1) + plane_sum;
  }
  return static_cast<Score>(acc << (kBitPlanes - p.bits()));
}

void scores_into(const WeavedMatrix& w, std::uint64_t sample,
                 const CenterSet& centers, PrecisionLevel p,
                 std::span<Score> out, std::span<std::uint64_t> plane_scratch) {
  const WeaveGeometry& g = w.geometry;
  const std::size_t k_count = centers.count;
  if (k_count == 0) throw DataError("scores: at least one centroid required");
  if (sample >= g.n_samples) throw std::out_of_range("scores: sample out of range");
  if (centers.padded_dims != g.padded_features || centers.dims != g.n_features) {
    throw DataError("scores: centroid shape does not match the weaved matrix");
  }
  if (centers.norms.size() != k_count) {
    throw DataError("scores: centroid norms missing");
  }
  if (out.size() != k_count || plane_scratch.size() != k_count) {
    throw DataError("scores: output spans must hold one entry per centroid");
  }

  const std::uint32_t difp = g.layout.difp;
  const std::uint64_t batch = sample / g.layout.disp;
  const std::size_t row_begin =
      static_cast<std::size_t>(sample % g.layout.disp) * difp;
  const std::uint64_t batch_base = batch * kBitPlanes * g.n_chunks;

  // out doubles as the Horner accumulator until the final combine.
  for (std::size_t k = 0; k < k_count; ++k) out[k] = 0;

  for (std::uint32_t t = 0; t < p.bits(); ++t) {
    for (std::size_t k = 0; k < k_count; ++k) plane_scratch[k] = 0;
    const std::uint64_t plane_base = batch_base + std::uint64_t{t} * g.n_chunks;
    for (std::uint64_t f = 0; f < g.n_chunks; ++f) {
      const auto lanes = w.word(plane_base + f);
      for_each_set_bit_in_range(
          lanes, row_begin, row_begin + difp, [&](std::size_t j_local) {
            const std::size_t j = f * difp + j_local;
            const std::uint32_t* col = centers.coords.data() + j;
            for (std::size_t k = 0; k < k_count; ++k) {
              plane_scratch[k] += col[k * centers.padded_dims];
            }
          });
    }
    for (std::size_t k = 0; k < k_count; ++k) {
      out[k] = (out[k] << 1) + static_cast<Score>(plane_scratch[k]);
    }
  }

  const std::uint32_t shift = kBitPlanes - p.bits();
  for (std::size_t k = 0; k < k_count; ++k) {
    const Score dot = out[k] << shift;
    out[k] = static_cast<Score>(centers.norms[k]) - 2 * dot;
  }
}

std::vector<Score> scores(const WeavedMatrix& w, std::uint64_t sample,
                          const CenterSet& centers, PrecisionLevel p) {
  std::vector<Score> out(centers.count);
  std::vector<std::uint64_t> scratch(centers.count);
  scores_into(w, sample, centers, p, out, scratch);
  return out;
}

std::size_t assign(std::span<const Score> s) {
  if (s.empty()) throw DataError("assign: empty score list");
  std::size_t best = 0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (s[k] < s[best]) best = k;
  }
  return best;
}

}  // namespace biskm
