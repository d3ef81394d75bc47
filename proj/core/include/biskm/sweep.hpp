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
// Precision-sweep experiment: quantize and weave a dataset once, run the
// same initialization at every requested precision, and pair each loss trace
// with the modeled per-iteration runtime. Reports are deterministic
// functions of (data, config); wall-clock time is returned separately and
// never enters a report.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biskm/fixedpoint.hpp"
#include "biskm/kmeans.hpp"
#include "biskm/perfmodel.hpp"

namespace biskm {

struct SweepConfig {
  std::vector<std::uint32_t> precisions = {1, 2, 4, 8, 16, 32};
  std::uint32_t clusters = 0;
  std::uint32_t max_iters = 100;
  double tol = 1e-6;

  /// Initialization: either k distinct data rows sampled under this seed, or
  /// explicit centers in data units (rows x cols == clusters x features).
  std::optional<std::uint64_t> center_seed;
  std::optional<RealMatrix> init_centers;

  /// Row-duplication factor for scaling experiments; every sample appears
  /// `duplicate` times. Copies cannot move the centroids, so loss traces
  /// match the unduplicated run when the initialization is pinned.
  std::uint32_t duplicate = 1;

  HwParams hw;

  /// Threads per Lloyd pass; an execution knob, not part of the experiment.
  unsigned workers = 1;
};

struct PrecisionResult {
  std::uint32_t precision = 0;
  std::uint32_t iterations = 0;
  bool converged = false;
  double final_loss = 0.0;
  std::vector<double> loss_trace;
  std::vector<double> cum_modeled_time_s;  ///< i * modeled runtime, i = 1..iterations
  IterationEstimate model;

  bool operator==(const PrecisionResult&) const = default;
};

struct SweepReport {
  std::string tool_version;
  std::string dataset_source;
  std::uint64_t samples = 0;  ///< after duplication
  std::uint32_t features = 0;
  std::uint32_t duplicate = 1;
  std::uint32_t clusters = 0;
  std::vector<std::uint32_t> precisions;
  std::uint32_t max_iters = 0;
  double tol = 0.0;
  std::string init_mode;  ///< "seed" or "explicit"
  std::optional<std::uint64_t> center_seed;
  HwParams hw;
  std::vector<PrecisionResult> results;

  bool operator==(const SweepReport&) const = default;
};

/// Runs the sweep on row-major data in original units. `source` labels the
/// dataset in the report. When `wall_clock_s` is non-null it receives one
/// measured wall-time per precision, in precision order.
SweepReport sweep(const RealMatrix& data, const std::string& source,
                  const SweepConfig& config,
                  std::vector<double>* wall_clock_s = nullptr);

/// K distinct row indices drawn under `seed`; the shared initialization used
/// whenever explicit centers are not pinned.
std::vector<std::uint64_t> seeded_center_rows(std::uint64_t n, std::uint32_t k,
                                              std::uint64_t seed);

}  // namespace biskm
