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
// Double-precision reference trainer.
//
// Why the double arithmetic here matches the integer path bit for bit:
// inputs are fractions r * 2^-32, so every coordinate sum over fewer than
// 2^21 rows is a multiple of 2^-32 below 2^53 * 2^-32 and therefore exact in
// a double. Dividing by the member count then yields the correctly rounded
// quotient, whose distance to the nearest half-integer boundary (at least
// 1/(2*count) when not on it) dwarfs the 2^-21 rounding bound, and exact
// half boundaries are representable. nearbyint under the default rounding
// mode rounds half to even, which is precisely the integer division rule in
// divide(). Assignments compare squared distances whose ordering matches the
// integer scores up to a shared ||x||^2 term.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "biskm/errors.hpp"
#include "biskm/kmeans.hpp"

namespace biskm {
namespace {

constexpr double kRawScale = 4294967296.0;  // 2^32
constexpr std::uint64_t kMaxReferenceRows = std::uint64_t{1} << 21;

void check_unit_interval(const RealMatrix& m, const char* what) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      const double v = m.at(i, j);
      if (!(v >= 0.0 && v < 1.0)) {
        throw DataError(std::string(what) + ": value at row " + std::to_string(i) +
                        ", column " + std::to_string(j) +
                        " is outside [0, 1)");
      }
    }
  }
}

// Neumaier-compensated sum; keeps the total exact to a couple of ulps even
// over hundreds of thousands of terms.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + carry; }
};

}  // namespace

TrainResult reference_lloyd(const RealMatrix& data, const RealMatrix& init_centers,
                            const TrainOptions& options) {
  if (data.rows == 0 || data.cols == 0) throw DataError("reference: empty data");
  if (data.rows >= kMaxReferenceRows) {
    throw DataError("reference: row count breaks the exact-summation bound");
  }
  if (init_centers.rows == 0) {
    throw DataError("reference: at least one centroid required");
  }
  if (init_centers.cols != data.cols) {
    throw DataError("reference: centroid shape does not match the data");
  }
  if (options.max_iters == 0) throw DataError("reference: max_iters must be positive");
  if (!(options.tol >= 0.0)) throw DataError("reference: tol must be non-negative");
  check_unit_interval(data, "reference data");
  check_unit_interval(init_centers, "reference centroids");

  const std::size_t n = data.rows;
  const std::size_t d = data.cols;
  const std::size_t k_count = init_centers.rows;

  std::vector<double> centers = init_centers.values;
  TrainResult r;
  r.assignments.assign(n, 0);

  for (std::uint32_t it = 0; it < options.max_iters; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      const double* x = data.values.data() + i * d;
      std::size_t best = 0;
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < k_count; ++k) {
        const double* c = centers.data() + k * d;
        double dist = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          const double dx = x[j] - c[j];
          dist += dx * dx;
        }
        if (dist < best_dist) {
          best_dist = dist;
          best = k;
        }
      }
      r.assignments[i] = static_cast<std::uint32_t>(best);
    }

    std::vector<double> sums(k_count * d, 0.0);
    std::vector<std::uint64_t> counts(k_count, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = r.assignments[i];
      ++counts[k];
      const double* x = data.values.data() + i * d;
      double* dst = sums.data() + k * d;
      for (std::size_t j = 0; j < d; ++j) dst[j] += x[j];
    }
    std::vector<double> next = centers;
    for (std::size_t k = 0; k < k_count; ++k) {
      if (counts[k] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        const double mean = sums[k * d + j] / static_cast<double>(counts[k]);
        double raw = std::nearbyint(mean * kRawScale);
        if (raw < 0.0) raw = 0.0;
        if (raw > 4294967295.0) raw = 4294967295.0;
        next[k * d + j] = raw / kRawScale;
      }
    }

    CompensatedSum total;
    for (std::size_t i = 0; i < n; ++i) {
      const double* x = data.values.data() + i * d;
      const double* c = next.data() + r.assignments[i] * d;
      for (std::size_t j = 0; j < d; ++j) {
        const double dx = x[j] - c[j];
        total.add(dx * dx);
      }
    }
    const double l = total.value();
    r.loss_trace.push_back(l);
    ++r.iterations;
    if (options.record_history) r.assignment_history.push_back(r.assignments);

    const bool fixed_point = next == centers;
    centers = std::move(next);
    if (fixed_point) {
      r.converged = true;
      break;
    }
    if (r.loss_trace.size() >= 2 &&
        loss_converged(r.loss_trace[r.loss_trace.size() - 2], l, options.tol)) {
      r.converged = true;
      break;
    }
  }

  std::vector<std::uint32_t> raw(k_count * d);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    double v = std::nearbyint(centers[i] * kRawScale);
    if (v < 0.0) v = 0.0;
    if (v > 4294967295.0) v = 4294967295.0;
    raw[i] = static_cast<std::uint32_t>(v);
  }
  r.centers = preprocess_centers(raw, k_count, d, d);
  return r;
}

}  // namespace biskm
