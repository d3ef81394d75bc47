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

#include "biskm/sweep.hpp"

#include <algorithm>
#include <chrono>

#include "biskm/errors.hpp"
#include "biskm/prng.hpp"
#include "biskm/version.hpp"
#include "biskm/weave.hpp"

namespace biskm {
namespace {

std::vector<std::uint32_t> canonical_precisions(std::vector<std::uint32_t> p) {
  if (p.empty()) throw DataError("sweep: precision list is empty");
  for (std::uint32_t v : p) PrecisionLevel{v};  // range check
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return p;
}

}  // namespace

std::vector<std::uint64_t> seeded_center_rows(std::uint64_t n, std::uint32_t k,
                                              std::uint64_t seed) {
  if (k == 0 || k > n) throw DataError("sweep: cluster count must lie in [1, n]");
  const std::uint64_t key = rng_stream(seed, 3);
  std::vector<std::uint64_t> rows;
  rows.reserve(k);
  std::uint64_t counter = 0;
  while (rows.size() < k) {
    const std::uint64_t idx = rng_at(key, counter++) % n;
    if (std::find(rows.begin(), rows.end(), idx) == rows.end()) rows.push_back(idx);
  }
  return rows;
}

SweepReport sweep(const RealMatrix& data, const std::string& source,
                  const SweepConfig& config, std::vector<double>* wall_clock_s) {
  if (data.rows == 0 || data.cols == 0) throw DataError("sweep: empty data");
  if (config.clusters == 0) throw DataError("sweep: at least one cluster required");
  if (config.max_iters == 0) throw DataError("sweep: max_iters must be positive");
  if (!(config.tol >= 0.0)) throw DataError("sweep: tol must be non-negative");
  if (config.duplicate == 0) throw DataError("sweep: duplicate factor must be positive");
  if (config.center_seed.has_value() == config.init_centers.has_value()) {
    throw DataError("sweep: exactly one of a center seed or explicit centers required");
  }
  config.hw.validate();
  const std::vector<std::uint32_t> precisions =
      canonical_precisions(config.precisions);

  RealMatrix full;
  full.cols = data.cols;
  full.rows = data.rows * config.duplicate;
  full.values.reserve(full.rows * full.cols);
  for (std::uint32_t rep = 0; rep < config.duplicate; ++rep) {
    full.values.insert(full.values.end(), data.values.begin(), data.values.end());
  }
  if (config.clusters > full.rows) {
    throw DataError("sweep: more clusters than samples");
  }

  const Normalizer norm = fit_normalizer(full);
  const FixedMatrix q = quantize(full, norm);
  const LayoutParams layout{config.hw.disp, config.hw.difp, config.hw.line_bits};
  const WeavedMatrix w = weave(q, layout);

  CenterSet init;
  if (config.init_centers) {
    const RealMatrix& c = *config.init_centers;
    if (c.rows != config.clusters || c.cols != data.cols) {
      throw DataError("sweep: explicit centers must be clusters x features");
    }
    const FixedMatrix qc = quantize(c, norm);
    init = preprocess_centers(qc.values, qc.rows, qc.cols, w.geometry.padded_features);
  } else {
    const auto rows =
        seeded_center_rows(full.rows, config.clusters, *config.center_seed);
    init = centers_from_rows(q, rows, w.geometry.padded_features);
  }

  SweepReport report;
  report.tool_version = kVersion;
  report.dataset_source = source;
  report.samples = full.rows;
  report.features = static_cast<std::uint32_t>(full.cols);
  report.duplicate = config.duplicate;
  report.clusters = config.clusters;
  report.precisions = precisions;
  report.max_iters = config.max_iters;
  report.tol = config.tol;
  report.init_mode = config.center_seed ? "seed" : "explicit";
  report.center_seed = config.center_seed;
  report.hw = config.hw;

  if (wall_clock_s) wall_clock_s->clear();
  for (std::uint32_t p : precisions) {
    TrainOptions opts;
    opts.precision = p;
    opts.max_iters = config.max_iters;
    opts.tol = config.tol;
    opts.workers = config.workers;

    const auto t0 = std::chrono::steady_clock::now();
    const TrainResult tr = run_kmeans(w, init, opts);
    const auto t1 = std::chrono::steady_clock::now();
    if (wall_clock_s) {
      wall_clock_s->push_back(std::chrono::duration<double>(t1 - t0).count());
    }

    PrecisionResult pr;
    pr.precision = p;
    pr.iterations = tr.iterations;
    pr.converged = tr.converged;
    pr.final_loss = tr.loss_trace.back();
    pr.loss_trace = tr.loss_trace;
    pr.model = estimate_iteration(full.rows, full.cols, config.clusters,
                                  PrecisionLevel{p}, config.hw);
    pr.cum_modeled_time_s.reserve(tr.iterations);
    for (std::uint32_t i = 1; i <= tr.iterations; ++i) {
      pr.cum_modeled_time_s.push_back(static_cast<double>(i) * pr.model.runtime_s);
    }
    report.results.push_back(std::move(pr));
  }
  return report;
}

}  // namespace biskm
