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

#include "biskm/perfmodel.hpp"

#include <algorithm>
#include <cmath>

#include "biskm/errors.hpp"
#include "biskm/weave.hpp"

namespace biskm {
namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

void check_shape(std::uint64_t n, std::uint64_t d) {
  if (n == 0) throw DataError("perfmodel: sample count must be positive");
  if (d == 0) throw DataError("perfmodel: feature count must be positive");
}

}  // namespace

void HwParams::validate() const {
  LayoutParams{disp, difp, line_bits}.validate();
  if (!(frequency_hz > 0.0)) throw DataError("perfmodel: frequency must be positive");
  if (!(peak_bandwidth_bytes_per_s > 0.0)) {
    throw DataError("perfmodel: peak bandwidth must be positive");
  }
  if (!(platform_cap_bytes_per_s > 0.0)) {
    throw DataError("perfmodel: bandwidth cap must be positive");
  }
  if (!(overhead_alpha >= 0.0) || !(overhead_beta >= 0.0)) {
    throw DataError("perfmodel: overheads must be non-negative");
  }
  if (row_buffer.plane_extent == 0) {
    throw DataError("perfmodel: row-buffer plane extent must be positive");
  }
  if (!(row_buffer.min_hit_fraction >= 0.0 && row_buffer.min_hit_fraction <= 1.0)) {
    throw DataError("perfmodel: min hit fraction must lie in [0, 1]");
  }
  if (!(row_buffer.hit_saturation > 0.0 && row_buffer.hit_saturation <= 1.0)) {
    throw DataError("perfmodel: hit saturation must lie in (0, 1]");
  }
  if (!(row_buffer.miss_penalty >= 0.0)) {
    throw DataError("perfmodel: miss penalty must be non-negative");
  }
}

std::uint64_t memory_traffic(std::uint64_t n, std::uint64_t d, PrecisionLevel p,
                             const HwParams& hw) {
  hw.validate();
  check_shape(n, d);
  return ceil_div(n, hw.disp) * p.bits() * ceil_div(d, hw.difp) * hw.line_bits;
}

double compute_cycles(std::uint64_t n, std::uint64_t d, std::uint64_t k,
                      PrecisionLevel p, const HwParams& hw) {
  hw.validate();
  check_shape(n, d);
  if (k == 0) throw DataError("perfmodel: cluster count must be positive");
  const std::uint64_t lines = ceil_div(n, hw.disp) * p.bits() * ceil_div(d, hw.difp);
  const double overhead =
      hw.overhead_alpha * static_cast<double>(k * ceil_div(d, hw.difp)) +
      hw.overhead_beta;
  return static_cast<double>(lines) + overhead;
}

double effective_bandwidth(PrecisionLevel p, const HwParams& hw) {
  hw.validate();
  const double base =
      std::min(hw.peak_bandwidth_bytes_per_s, hw.platform_cap_bytes_per_s);
  const RowBufferModel& rb = hw.row_buffer;
  if (!rb.enabled) return base;
  const double hit = std::min(
      1.0, std::max(rb.min_hit_fraction, static_cast<double>(p.bits()) /
                                             static_cast<double>(rb.plane_extent)));
  if (hit >= rb.hit_saturation) return base;
  const double shortfall = (rb.hit_saturation - hit) / rb.hit_saturation;
  return base / (1.0 + rb.miss_penalty * shortfall);
}

IterationEstimate estimate_iteration(std::uint64_t n, std::uint64_t d,
                                     std::uint64_t k, PrecisionLevel p,
                                     const HwParams& hw) {
  const auto runtime_at = [&](PrecisionLevel prec) {
    const std::uint64_t bits = memory_traffic(n, d, prec, hw);
    const double mem_s = static_cast<double>(bits) / 8.0 / effective_bandwidth(prec, hw);
    const double compute_s = compute_cycles(n, d, k, prec, hw) / hw.frequency_hz;
    return std::max(mem_s, compute_s);
  };

  IterationEstimate e;
  e.traffic_bits = memory_traffic(n, d, p, hw);
  e.compute_cycles = compute_cycles(n, d, k, p, hw);
  e.effective_bandwidth_bytes_per_s = effective_bandwidth(p, hw);
  e.runtime_s = runtime_at(p);
  e.throughput_bytes_per_s =
      static_cast<double>(n) * static_cast<double>(d) * 4.0 / e.runtime_s;
  e.speedup_vs_32 = runtime_at(PrecisionLevel{32}) / e.runtime_s;
  e.hardware_faithful = k <= kMaxHardwareClusters && d <= kMaxFeatures;
  return e;
}

}  // namespace biskm
