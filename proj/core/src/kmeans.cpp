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

#include "biskm/kmeans.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

#include "biskm/errors.hpp"
#include "biskm/parallel.hpp"

namespace biskm {

CenterSet preprocess_centers(std::span<const std::uint32_t> coords, std::size_t k,
                             std::size_t dims, std::size_t padded_dims) {
  if (k == 0) throw DataError("centers: at least one centroid required");
  if (dims == 0) throw DataError("centers: centroids need at least one dimension");
  if (padded_dims < dims) {
    throw DataError("centers: padded width smaller than the dimension count");
  }
  if (coords.size() != k * dims) {
    throw DataError("centers: got " + std::to_string(coords.size()) +
                    " coordinates for " + std::to_string(k) + " x " +
                    std::to_string(dims));
  }
  CenterSet c;
  c.count = k;
  c.dims = dims;
  c.padded_dims = padded_dims;
  c.coords.assign(k * padded_dims, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < dims; ++j) {
      c.coord(i, j) = coords[i * dims + j];
    }
  }
  c.refresh_norms();
  return c;
}

CenterSet centers_from_rows(const FixedMatrix& m, std::span<const std::uint64_t> rows,
                            std::size_t padded_dims) {
  std::vector<std::uint32_t> coords;
  coords.reserve(rows.size() * m.cols);
  for (std::uint64_t r : rows) {
    if (r >= m.rows) throw DataError("centers: row index out of range");
    coords.insert(coords.end(), m.values.begin() + r * m.cols,
                  m.values.begin() + (r + 1) * m.cols);
  }
  return preprocess_centers(coords, rows.size(), m.cols, padded_dims);
}

RealMatrix centers_to_fractions(const CenterSet& centers) {
  RealMatrix r;
  r.rows = centers.count;
  r.cols = centers.dims;
  r.values.reserve(centers.count * centers.dims);
  for (std::size_t k = 0; k < centers.count; ++k) {
    for (std::size_t j = 0; j < centers.dims; ++j) {
      r.values.push_back(fraction_value(centers.coord(k, j)));
    }
  }
  return r;
}

std::vector<std::uint32_t> assign_all(const WeavedMatrix& w, const CenterSet& centers,
                                      PrecisionLevel p, unsigned workers) {
  const WeaveGeometry& g = w.geometry;
  if (centers.count == 0) throw DataError("assign_all: at least one centroid required");
  if (centers.padded_dims != g.padded_features || centers.dims != g.n_features) {
    throw DataError("assign_all: centroid shape does not match the weaved matrix");
  }
  if (centers.norms.size() != centers.count) {
    throw DataError("assign_all: centroid norms missing");
  }

  std::vector<std::uint32_t> out(g.n_samples);
  parallel_ranges(g.n_samples, workers,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    std::vector<Score> sc(centers.count);
                    std::vector<std::uint64_t> scratch(centers.count);
                    for (std::size_t i = begin; i < end; ++i) {
                      scores_into(w, i, centers, p, sc, scratch);
                      out[i] = static_cast<std::uint32_t>(assign(sc));
                    }
                  });
  return out;
}

ClusterSums accumulate(const FixedMatrix& m, std::span<const std::uint32_t> assignments,
                       std::size_t clusters, unsigned workers) {
  if (clusters == 0) throw DataError("accumulate: at least one cluster required");
  if (assignments.size() != m.rows) {
    throw DataError("accumulate: one assignment per row required");
  }
  for (std::uint32_t a : assignments) {
    if (a >= clusters) throw DataError("accumulate: assignment out of range");
  }

  const std::size_t d = m.cols;
  const std::size_t slots = parallel_slots(m.rows, workers);
  std::vector<std::uint64_t> slot_sums(slots * clusters * d, 0);
  std::vector<std::uint64_t> slot_counts(slots * clusters, 0);
  parallel_ranges(m.rows, workers,
                  [&](std::size_t slot, std::size_t begin, std::size_t end) {
                    std::uint64_t* sums = slot_sums.data() + slot * clusters * d;
                    std::uint64_t* counts = slot_counts.data() + slot * clusters;
                    for (std::size_t i = begin; i < end; ++i) {
                      const std::size_t k = assignments[i];
                      ++counts[k];
                      const std::uint32_t* row = m.values.data() + i * d;
                      std::uint64_t* dst = sums + k * d;
                      for (std::size_t j = 0; j < d; ++j) dst[j] += row[j];
                    }
                  });

  ClusterSums out;
  out.clusters = clusters;
  out.dims = d;
  out.sums.assign(clusters * d, 0);
  out.counts.assign(clusters, 0);
  for (std::size_t slot = 0; slot < slots; ++slot) {
    for (std::size_t k = 0; k < clusters; ++k) {
      out.counts[k] += slot_counts[slot * clusters + k];
      const std::uint64_t* src = slot_sums.data() + (slot * clusters + k) * d;
      for (std::size_t j = 0; j < d; ++j) out.sums[k * d + j] += src[j];
    }
  }
  return out;
}

CenterSet divide(const ClusterSums& sums, const CenterSet& previous) {
  if (sums.clusters != previous.count || sums.dims != previous.dims) {
    throw DataError("divide: sums shape does not match the centroids");
  }
  CenterSet out = previous;
  for (std::size_t k = 0; k < sums.clusters; ++k) {
    const std::uint64_t count = sums.counts[k];
    if (count == 0) continue;
    for (std::size_t j = 0; j < sums.dims; ++j) {
      const std::uint64_t s = sums.sum(k, j);
      std::uint64_t q = s / count;
      const std::uint64_t r = s % count;
      const uint128 twice = static_cast<uint128>(r) * 2;
      if (twice > count || (twice == count && (q & 1))) ++q;
      out.coord(k, j) =
          q > 0xFFFFFFFFull ? 0xFFFFFFFFu : static_cast<std::uint32_t>(q);
    }
  }
  out.refresh_norms();
  return out;
}

double loss(const FixedMatrix& m, const CenterSet& centers,
            std::span<const std::uint32_t> assignments) {
  if (assignments.size() != m.rows) {
    throw DataError("loss: one assignment per row required");
  }
  if (centers.dims != m.cols) {
    throw DataError("loss: centroid shape does not match the matrix");
  }
  uint128 total = 0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    const std::uint32_t k = assignments[i];
    if (k >= centers.count) throw DataError("loss: assignment out of range");
    const std::uint32_t* row = m.values.data() + i * m.cols;
    for (std::size_t j = 0; j < m.cols; ++j) {
      const std::int64_t d =
          static_cast<std::int64_t>(row[j]) - static_cast<std::int64_t>(centers.coord(k, j));
      const std::uint64_t ad = static_cast<std::uint64_t>(d < 0 ? -d : d);
      total += static_cast<uint128>(ad * ad);
    }
  }
  return std::ldexp(static_cast<double>(total), -64);
}

TrainResult run_kmeans(const WeavedMatrix& w, const CenterSet& init,
                       const TrainOptions& options) {
  const WeaveGeometry& g = w.geometry;
  const PrecisionLevel p(options.precision);
  if (init.count == 0) throw DataError("run_kmeans: at least one centroid required");
  if (init.dims != g.n_features || init.padded_dims != g.padded_features) {
    throw DataError("run_kmeans: centroid shape does not match the weaved matrix");
  }
  if (options.max_iters == 0) throw DataError("run_kmeans: max_iters must be positive");
  if (!(options.tol >= 0.0)) throw DataError("run_kmeans: tol must be non-negative");

  const FixedMatrix m_p = unweave(w, p);

  TrainResult r;
  r.centers = init;
  r.centers.refresh_norms();
  for (std::uint32_t it = 0; it < options.max_iters; ++it) {
    std::vector<std::uint32_t> a = assign_all(w, r.centers, p, options.workers);
    const ClusterSums sums = accumulate(m_p, a, r.centers.count, options.workers);
    CenterSet next = divide(sums, r.centers);
    const double l = loss(m_p, next, a);
    r.loss_trace.push_back(l);
    ++r.iterations;
    if (options.record_history) r.assignment_history.push_back(a);

    // A repeated centroid set is a fixed point: the next assignment pass
    // would reproduce `a`, so nothing can change any more.
    const bool fixed_point = next.coords == r.centers.coords;
    r.assignments = std::move(a);
    r.centers = std::move(next);
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
  return r;
}

}  // namespace biskm
