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
#include <cstdint>
#include <vector>

#include "biskm/errors.hpp"

namespace biskm {

/// Row-major matrix of doubles.
struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // rows * cols

  RealMatrix() = default;
  RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c) {}

  double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

/// Row-major matrix of 32-bit unsigned fixed-point fractions. A stored raw
/// value v represents v / 2^32, so every entry lies in [0, 1).
struct FixedMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint32_t> values;

  FixedMatrix() = default;
  FixedMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c) {}

  std::uint32_t& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }

  bool operator==(const FixedMatrix&) const = default;
};

/// Number of most-significant bits consumed per value, 1..32.
class PrecisionLevel {
 public:
  static constexpr std::uint32_t kMin = 1;
  static constexpr std::uint32_t kMax = 32;

  constexpr explicit PrecisionLevel(std::uint32_t bits) : bits_(bits) {
    if (bits < kMin || bits > kMax)
      throw std::invalid_argument("precision level must be in [1, 32], got " +
                                  std::to_string(bits));
  }
  constexpr std::uint32_t bits() const { return bits_; }

  bool operator==(const PrecisionLevel&) const = default;

 private:
  std::uint32_t bits_;
};

/// Per-feature min-max mapping into [0, 1). A constant feature has range 0
/// and maps everything to 0.
struct Normalizer {
  std::vector<double> mins;
  std::vector<double> ranges;  // column max - min, always >= 0

  std::size_t dims() const { return mins.size(); }
};

/// Computes per-column minimum and range. Rejects non-finite entries,
/// naming the offending row and column.
Normalizer fit_normalizer(const RealMatrix& data);

/// Maps data through `norm` into 32-bit fractions:
/// raw = round((x - min) / range * (2^32 - 1)), half away from zero,
/// clamped to [0, 2^32 - 1]. A zero-range column quantizes to 0.
FixedMatrix quantize(const RealMatrix& data, const Normalizer& norm);

/// Keeps the `p` most significant bits of `raw` and zeroes the rest.
constexpr std::uint32_t truncate_msb(std::uint32_t raw, PrecisionLevel p) {
  return raw & (~std::uint32_t{0} << (32 - p.bits()));
}

/// Elementwise truncate_msb.
FixedMatrix truncate_matrix(const FixedMatrix& m, PrecisionLevel p);

/// Inverse of quantize for one value: min[j] + raw / (2^32 - 1) * range[j].
double dequantize(std::uint32_t raw, const Normalizer& norm, std::size_t j);

/// The fraction a raw value denotes: raw / 2^32. Exact in double.
constexpr double fraction_value(std::uint32_t raw) {
  return static_cast<double>(raw) * 0x1p-32;
}

/// Whole-matrix view of the stored fractions (raw / 2^32), exact in double.
/// This is the space the clustering loss and the reference oracle work in.
RealMatrix fraction_matrix(const FixedMatrix& m);

}  // namespace biskm
