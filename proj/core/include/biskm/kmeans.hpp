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
// Lloyd iteration over the weaved layout, plus a plain double-precision
// reference implementation used as a cross-check in the tests.
//
// Both paths share one iteration shape: assign against the current centroids,
// update centroids, record the loss of the *updated* centroids under the new
// assignment, then test the stopping rules. Centroid updates round the mean
// half to even onto the 32-bit grid, so for matching inputs the two paths
// walk identical trajectories.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "biskm/bitserial.hpp"
#include "biskm/fixedpoint.hpp"
#include "biskm/weave.hpp"

namespace biskm {

/// Per-cluster running totals of one assignment pass: raw coordinate sums
/// and member counts. Sums of uint32 values stay exact in uint64 for any
/// realistic sample count.
struct ClusterSums {
  std::size_t clusters = 0;
  std::size_t dims = 0;
  std::vector<std::uint64_t> sums;    ///< clusters * dims, row-major
  std::vector<std::uint64_t> counts;  ///< clusters

  std::uint64_t sum(std::size_t k, std::size_t j) const { return sums[k * dims + j]; }

  bool operator==(const ClusterSums&) const = default;
};

struct TrainOptions {
  std::uint32_t precision = 32;  ///< bit planes read per value
  std::uint32_t max_iters = 100;
  double tol = 1e-6;       ///< relative loss-change stopping threshold
  unsigned workers = 1;    ///< threads for the assign and accumulate passes
  bool record_history = false;  ///< keep every iteration's assignment vector
};

/// Denominator floor of the relative loss-change rule, so a loss of exactly
/// zero stops instead of dividing by zero.
inline constexpr double kLossFloor = 1e-12;

/// Stopping test shared by run_kmeans and reference_lloyd. With tol == 0 it
/// never fires and only the fixed-point and max_iters rules remain.
inline bool loss_converged(double previous, double current, double tol) {
  return std::abs(current - previous) / std::max(previous, kLossFloor) < tol;
}

struct TrainResult {
  CenterSet centers;
  std::vector<std::uint32_t> assignments;
  std::vector<double> loss_trace;  ///< one entry per iteration
  std::uint32_t iterations = 0;
  bool converged = false;
  /// Filled only under TrainOptions::record_history.
  std::vector<std::vector<std::uint32_t>> assignment_history;
};

/// Builds a CenterSet from row-major k x dims raw coordinates, zero-padding
/// each row to padded_dims and precomputing the squared norms.
CenterSet preprocess_centers(std::span<const std::uint32_t> coords, std::size_t k,
                             std::size_t dims, std::size_t padded_dims);

/// Builds a CenterSet from selected rows of a fixed-point matrix.
CenterSet centers_from_rows(const FixedMatrix& m, std::span<const std::uint64_t> rows,
                            std::size_t padded_dims);

/// Centroid coordinates as fractions in [0, 1), k x dims, padding dropped.
RealMatrix centers_to_fractions(const CenterSet& centers);

/// Assigns every sample to its nearest centroid via the bit-serial kernel.
/// The result is identical for every worker count.
std::vector<std::uint32_t> assign_all(const WeavedMatrix& w, const CenterSet& centers,
                                      PrecisionLevel p, unsigned workers = 1);

/// Sums the (truncated) coordinates of each cluster's members. Integer adds
/// are reassociated freely across workers without changing the result.
ClusterSums accumulate(const FixedMatrix& m, std::span<const std::uint32_t> assignments,
                       std::size_t clusters, unsigned workers = 1);

/// New centroids: per coordinate the integer mean rounded half to even,
/// clamped to the raw range. A cluster with no members keeps its previous
/// centroid. Norms are refreshed.
CenterSet divide(const ClusterSums& sums, const CenterSet& previous);

/// Sum of squared distances between samples and their assigned centroids in
/// fraction space. Accumulated exactly in 128-bit raw units, converted to
/// double once at the end.
double loss(const FixedMatrix& m, const CenterSet& centers,
            std::span<const std::uint32_t> assignments);

/// Full any-precision Lloyd run over a weaved matrix.
///
/// Stops when the centroids reach a fixed point (which subsumes a repeated
/// assignment), when the relative loss change drops below tol, or after
/// max_iters iterations; only the last leaves converged == false.
TrainResult run_kmeans(const WeavedMatrix& w, const CenterSet& init,
                       const TrainOptions& options);

/// Reference Lloyd in plain doubles over fraction-space data in [0, 1).
/// Centroid means are rounded onto the 32-bit grid each update, mirroring
/// run_kmeans exactly; see reference.cpp for why the double arithmetic
/// reproduces the integer path bit for bit at moderate scale.
TrainResult reference_lloyd(const RealMatrix& data, const RealMatrix& init_centers,
                            const TrainOptions& options);

}  // namespace biskm
