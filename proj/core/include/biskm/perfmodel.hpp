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
// Analytic model of one Lloyd iteration on the reference accelerator: a
// streaming design that reads p bit planes per (batch, chunk) pair, one
// memory line per cycle when fed, with up to eight distance processors
// working on the same line. Runtime is the max of the memory-bound and the
// compute-bound time, so at full precision the device is bandwidth-limited
// and precision p buys a near-linear 32/p speedup.

#pragma once

#include <cstdint>

#include "biskm/fixedpoint.hpp"

namespace biskm {

/// Distance processors on the reference device; larger K still models, but
/// is flagged as beyond the hardware.
inline constexpr std::uint32_t kMaxHardwareClusters = 8;

/// Optional DRAM row-buffer refinement. At low precision a scan touches few
/// consecutive lines per (batch, chunk) pair, so row-buffer hits get scarce
/// and the sustained bandwidth sags below peak. The hit fraction is modeled
/// as p / plane_extent (clamped to [min_hit_fraction, 1]); hit fractions at
/// or above hit_saturation sustain full bandwidth, and below it bandwidth is
/// derated by miss_penalty times the relative shortfall.
struct RowBufferModel {
  bool enabled = false;
  std::uint32_t plane_extent = 32;
  double min_hit_fraction = 0.0;
  double hit_saturation = 0.25;
  double miss_penalty = 0.25;

  bool operator==(const RowBufferModel&) const = default;
};

/// Device parameters. The defaults describe the reference platform with
/// aggregation overheads and the row-buffer refinement switched off, which
/// makes the p = 32 runtime exactly bandwidth-bound.
struct HwParams {
  std::uint32_t disp = 32;
  std::uint32_t difp = 16;
  std::uint32_t line_bits = 512;
  double frequency_hz = 2.0e8;
  double peak_bandwidth_bytes_per_s = 12.8e9;  ///< sequential-read bandwidth
  double platform_cap_bytes_per_s = 17.0e9;    ///< shared-bus ceiling
  double overhead_alpha = 0.0;  ///< cycles per cluster-chunk for the update stage
  double overhead_beta = 0.0;   ///< fixed cycles per iteration
  RowBufferModel row_buffer;

  void validate() const;

  bool operator==(const HwParams&) const = default;
};

struct IterationEstimate {
  std::uint64_t traffic_bits = 0;
  double compute_cycles = 0.0;
  double effective_bandwidth_bytes_per_s = 0.0;
  double runtime_s = 0.0;
  double throughput_bytes_per_s = 0.0;  ///< original 32-bit data volume over runtime
  double speedup_vs_32 = 0.0;
  bool hardware_faithful = true;  ///< shape fits the reference device

  bool operator==(const IterationEstimate&) const = default;
};

/// Bits read per assignment pass: ceil(n/disp) * p * ceil(d/difp) * line_bits.
std::uint64_t memory_traffic(std::uint64_t n, std::uint64_t d, PrecisionLevel p,
                             const HwParams& hw);

/// Pipeline cycles per iteration: one line per cycle plus the configured
/// update overhead alpha * k * ceil(d/difp) + beta.
double compute_cycles(std::uint64_t n, std::uint64_t d, std::uint64_t k,
                      PrecisionLevel p, const HwParams& hw);

/// Sustained bandwidth at precision p: min(peak, cap), derated by the
/// row-buffer model when enabled.
double effective_bandwidth(PrecisionLevel p, const HwParams& hw);

IterationEstimate estimate_iteration(std::uint64_t n, std::uint64_t d,
                                     std::uint64_t k, PrecisionLevel p,
                                     const HwParams& hw);

}  // namespace biskm
