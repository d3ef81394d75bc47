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

#include <cstdint>
#include <vector>

#include "biskm/fixedpoint.hpp"

namespace biskm {

/// Isotropic Gaussian blob generator. Cluster centers are drawn uniformly
/// from [0.1, 0.9) per coordinate; sample i belongs to cluster i mod k and
/// adds N(0, spread^2) noise per coordinate. Fully determined by the seed.
struct BlobSpec {
  std::uint64_t n = 0;
  std::uint32_t d = 0;
  std::uint32_t k = 0;
  double spread = 0.05;
  std::uint64_t seed = 0;
};

struct BlobData {
  RealMatrix points;
  std::vector<std::uint32_t> labels;
  RealMatrix true_centers;  ///< k x d, the noise-free cluster centers
};

BlobData gen_blobs(const BlobSpec& spec);

}  // namespace biskm
