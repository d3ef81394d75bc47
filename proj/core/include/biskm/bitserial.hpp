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
// Bit-serial distance evaluation over the weaved layout.
//
// All quantities are fixed-point fractions: a raw uint32 r stands for
// r * 2^-32. Dot products and squared norms of such values live at scale
// 2^-64 and are kept as exact 128-bit integers; doubles only appear when a
// caller asks for a printable value.

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "biskm/fixedpoint.hpp"
#include "biskm/weave.hpp"

namespace biskm {

using int128 = __int128;
using uint128 = unsigned __int128;

/// Assignment score ||c||^2 - 2 <x, c> at scale 2^-64. Signed: the cross
/// term can dominate the norm.
using Score = int128;

inline double score_to_double(Score s) {
  return std::ldexp(static_cast<double>(s), -64);
}

/// One candidate centroid, padded to the weaved feature width with zeros.
struct CenterVector {
  std::vector<std::uint32_t> coords;

  bool operator==(const CenterVector&) const = default;
};

/// K centroids with precomputed squared norms. `coords` is row-major,
/// `padded_dims` wide per row; coordinates past `dims` are zero.
struct CenterSet {
  std::size_t count = 0;
  std::size_t dims = 0;
  std::size_t padded_dims = 0;
  std::vector<std::uint32_t> coords;
  std::vector<uint128> norms;

  std::uint32_t coord(std::size_t k, std::size_t j) const {
    return coords[k * padded_dims + j];
  }
  std::uint32_t& coord(std::size_t k, std::size_t j) {
    return coords[k * padded_dims + j];
  }
  std::span<const std::uint32_t> row(std::size_t k) const {
    return {coords.data() + k * padded_dims, padded_dims};
  }

  /// Recomputes every squared norm from the coordinates.
  void refresh_norms();

  bool operator==(const CenterSet&) const = default;
};

/// Exact squared norm of a raw coordinate row at scale 2^-64.
uint128 norm_sq(std::span<const std::uint32_t> coords);

/// <trunc_p(x_i), c> at scale 2^-64, computed plane-serially: per plane t the
/// matching center coordinates are summed, and the plane sums are combined
/// MSB-first as acc = 2*acc + plane_sum, then shifted by 32 - p. Touches
/// only the first p planes of the layout. Exact; the result is
/// non-negative and bounded by 2^74, well inside 128 bits.
Score bis_dot(const WeavedMatrix& w, std::uint64_t sample, const CenterVector& c,
              PrecisionLevel p);

/// Assignment scores of one sample against every centroid, sharing a single
/// pass over the sample's weaved bits.
std::vector<Score> scores(const WeavedMatrix& w, std::uint64_t sample,
                          const CenterSet& centers, PrecisionLevel p);

/// Allocation-free variant for hot loops. `out` must hold centers.count
/// entries and `plane_scratch` centers.count entries.
void scores_into(const WeavedMatrix& w, std::uint64_t sample,
                 const CenterSet& centers, PrecisionLevel p,
                 std::span<Score> out, std::span<std::uint64_t> plane_scratch);

/// Index of the smallest score; ties break toward the lowest index.
std::size_t assign(std::span<const Score> s);

}  // namespace biskm
