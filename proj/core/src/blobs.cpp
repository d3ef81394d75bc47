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

#include "biskm/blobs.hpp"

#include <cmath>

#include "biskm/errors.hpp"
#include "biskm/prng.hpp"

namespace biskm {

BlobData gen_blobs(const BlobSpec& spec) {
  if (spec.k == 0) throw DataError("blobs: at least one cluster required");
  if (spec.n < spec.k) throw DataError("blobs: need at least one sample per cluster");
  if (spec.d == 0) throw DataError("blobs: at least one dimension required");
  if (!(spec.spread >= 0.0) || !std::isfinite(spec.spread)) {
    throw DataError("blobs: spread must be finite and non-negative");
  }

  const std::uint64_t center_key = rng_stream(spec.seed, 1);
  const std::uint64_t noise_key = rng_stream(spec.seed, 2);

  BlobData out;
  out.true_centers.rows = spec.k;
  out.true_centers.cols = spec.d;
  out.true_centers.values.resize(std::size_t{spec.k} * spec.d);
  for (std::size_t i = 0; i < out.true_centers.values.size(); ++i) {
    out.true_centers.values[i] = 0.1 + 0.8 * rng_uniform(center_key, i);
  }

  out.points.rows = spec.n;
  out.points.cols = spec.d;
  out.points.values.resize(spec.n * spec.d);
  out.labels.resize(spec.n);
  for (std::uint64_t i = 0; i < spec.n; ++i) {
    const std::uint32_t label = static_cast<std::uint32_t>(i % spec.k);
    out.labels[i] = label;
    for (std::uint32_t j = 0; j < spec.d; ++j) {
      double v = out.true_centers.at(label, j) +
                 spec.spread * rng_normal(noise_key, i * spec.d + j);
      // Keep samples inside the unit box so quantization endpoints stay tame.
      if (v < 0.0) v = 0.0;
      if (v > 1.0) v = 1.0;
      out.points.values[i * spec.d + j] = v;
    }
  }
  return out;
}

}  // namespace biskm
