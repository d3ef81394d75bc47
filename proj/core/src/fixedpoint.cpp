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

#include "biskm/fixedpoint.hpp"

#include <cmath>
#include <string>

namespace biskm {

namespace {
constexpr double kScale = 4294967295.0;  // 2^32 - 1, exact in double
}

Normalizer fit_normalizer(const RealMatrix& data) {
  if (data.rows == 0 || data.cols == 0)
    throw DataError("fit_normalizer: matrix must be at least 1x1");

  Normalizer norm;
  norm.mins.assign(data.cols, 0.0);
  norm.ranges.assign(data.cols, 0.0);

  std::vector<double> maxs(data.cols);
  for (std::size_t j = 0; j < data.cols; ++j) {
    norm.mins[j] = data.at(0, j);
    maxs[j] = data.at(0, j);
  }
  for (std::size_t i = 0; i < data.rows; ++i) {
    for (std::size_t j = 0; j < data.cols; ++j) {
      const double x = data.at(i, j);
      if (!std::isfinite(x))
        throw DataError("non-finite value at row " + std::to_string(i) +
                        ", column " + std::to_string(j));
      if (x < norm.mins[j]) norm.mins[j] = x;
      if (x > maxs[j]) maxs[j] = x;
    }
  }
  for (std::size_t j = 0; j < data.cols; ++j)
    norm.ranges[j] = maxs[j] - norm.mins[j];
  return norm;
}

FixedMatrix quantize(const RealMatrix& data, const Normalizer& norm) {
  if (data.cols != norm.dims())
    throw DataError("quantize: matrix has " + std::to_string(data.cols) +
                    " columns but normalizer expects " +
                    std::to_string(norm.dims()));

  FixedMatrix out(data.rows, data.cols);
  for (std::size_t i = 0; i < data.rows; ++i) {
    for (std::size_t j = 0; j < data.cols; ++j) {
      const double range = norm.ranges[j];
      if (range == 0.0) {
        out.at(i, j) = 0;
        continue;
      }
      // For in-range x the product is <= 2^32 - 1 < 2^53, so the round is
      // reliable; std::round is half-away-from-zero.
      const double t = (data.at(i, j) - norm.mins[j]) / range;
      const double r = std::round(t * kScale);
      std::uint32_t raw;
      if (r <= 0.0)
        raw = 0;
      else if (r >= kScale)
        raw = 0xFFFFFFFFu;
      else
        raw = static_cast<std::uint32_t>(r);
      out.at(i, j) = raw;
    }
  }
  return out;
}

FixedMatrix truncate_matrix(const FixedMatrix& m, PrecisionLevel p) {
  FixedMatrix out(m.rows, m.cols);
  for (std::size_t idx = 0; idx < m.values.size(); ++idx)
    out.values[idx] = truncate_msb(m.values[idx], p);
  return out;
}

double dequantize(std::uint32_t raw, const Normalizer& norm, std::size_t j) {
  if (j >= norm.dims())
    throw std::out_of_range("dequantize: feature index out of range");
  return norm.mins[j] + static_cast<double>(raw) / kScale * norm.ranges[j];
}

RealMatrix fraction_matrix(const FixedMatrix& m) {
  RealMatrix out(m.rows, m.cols);
  for (std::size_t idx = 0; idx < m.values.size(); ++idx)
    out.values[idx] = fraction_value(m.values[idx]);
  return out;
}

}  // namespace biskm
