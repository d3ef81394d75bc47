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
// Tests for the harness modules: blob generation, CSV I/O, the precision
// sweep, and report serialization.

#include <doctest.h>

#include <cmath>
#include <fstream>

#include "biskm/blobs.hpp"
#include "biskm/csv.hpp"
#include "biskm/errors.hpp"
#include "biskm/kmeans.hpp"
#include "biskm/report.hpp"
#include "biskm/sweep.hpp"
#include "support/testutil.hpp"

using namespace biskm;

TEST_CASE("blob generation is a pure function of the spec") {
  const BlobSpec spec{.n = 60, .d = 5, .k = 4, .spread = 0.07, .seed = 99};
  const BlobData a = gen_blobs(spec);
  const BlobData b = gen_blobs(spec);
  CHECK(a.points.values == b.points.values);
  CHECK(a.labels == b.labels);
  CHECK(a.points.rows == 60);
  CHECK(a.points.cols == 5);
  for (std::size_t i = 0; i < a.labels.size(); ++i) CHECK(a.labels[i] == i % 4);

  const BlobData c = gen_blobs({.n = 60, .d = 5, .k = 4, .spread = 0.07, .seed = 100});
  CHECK(a.points.values != c.points.values);
}

TEST_CASE("zero spread collapses each blob onto its center") {
  const BlobData b = gen_blobs({.n = 12, .d = 3, .k = 3, .spread = 0.0, .seed = 4});
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(b.points.at(i, j) == b.true_centers.at(i % 3, j));
    }
  }
}

TEST_CASE("blob centers stay inside the margin box") {
  const BlobData b = gen_blobs({.n = 30, .d = 10, .k = 6, .spread = 0.0, .seed = 8});
  for (double v : b.true_centers.values) {
    CHECK(v >= 0.1);
    CHECK(v < 0.9);
  }
}

TEST_CASE("blob spec validation") {
  CHECK_THROWS_AS(gen_blobs({.n = 2, .d = 2, .k = 3, .spread = 0.1, .seed = 0}),
                  DataError);
  CHECK_THROWS_AS(gen_blobs({.n = 5, .d = 0, .k = 2, .spread = 0.1, .seed = 0}),
                  DataError);
  CHECK_THROWS_AS(gen_blobs({.n = 5, .d = 2, .k = 2, .spread = -0.1, .seed = 0}),
                  DataError);
}

TEST_CASE("CSV save and load round-trip doubles exactly") {
  test::ScratchDir scratch("csv");
  RealMatrix m;
  m.rows = 20;
  m.cols = 4;
  m.values.resize(80);
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    m.values[i] = -3.0 + 7.0 * rng_uniform(0x5a5a, i);
  }
  const auto path = scratch.file("m.csv");
  save_csv(m, path);
  const RealMatrix back = load_csv(path);
  CHECK(back.rows == m.rows);
  CHECK(back.cols == m.cols);
  CHECK(back.values == m.values);
}

TEST_CASE("load_csv skips a header on request and flags ragged rows") {
  test::ScratchDir scratch("csvh");
  {
    std::ofstream out(scratch.file("h.csv"));
    out << "a,b\n1,2\n3,4\n";
  }
  const RealMatrix m = load_csv(scratch.file("h.csv"), true);
  CHECK(m.rows == 2);
  CHECK(m.values == std::vector<double>{1, 2, 3, 4});
  CHECK_THROWS_AS(load_csv(scratch.file("h.csv"), false), DataError);

  {
    std::ofstream out(scratch.file("ragged.csv"));
    out << "1,2\n3\n";
  }
  CHECK_THROWS_WITH_AS(load_csv(scratch.file("ragged.csv")),
                       doctest::Contains("line 2"), DataError);

  {
    std::ofstream out(scratch.file("bad.csv"));
    out << "1,oops\n";
  }
  CHECK_THROWS_AS(load_csv(scratch.file("bad.csv")), DataError);
  CHECK_THROWS_AS(load_csv(scratch.file("missing.csv")), DataError);
}

namespace {

SweepConfig small_config() {
  SweepConfig config;
  config.precisions = {2, 8, 32};
  config.clusters = 3;
  config.max_iters = 30;
  config.tol = 0.0;
  config.center_seed = 7;
  return config;
}

}  // namespace

TEST_CASE("sweep echoes its configuration and orders results by precision") {
  const BlobData blobs = gen_blobs({.n = 200, .d = 6, .k = 3, .spread = 0.05,
                                    .seed = 13});
  SweepConfig config = small_config();
  config.precisions = {32, 8, 2, 8};  // unsorted with duplicates
  const SweepReport r = sweep(blobs.points, "blobs-13", config);
  CHECK(r.precisions == std::vector<std::uint32_t>{2, 8, 32});
  REQUIRE(r.results.size() == 3);
  CHECK(r.results[0].precision == 2);
  CHECK(r.results[2].precision == 32);
  CHECK(r.samples == 200);
  CHECK(r.features == 6);
  CHECK(r.clusters == 3);
  CHECK(r.init_mode == "seed");
  CHECK(r.center_seed == 7);
  CHECK(r.dataset_source == "blobs-13");
  for (const PrecisionResult& pr : r.results) {
    REQUIRE(pr.iterations >= 1);
    CHECK(pr.loss_trace.size() == pr.iterations);
    CHECK(pr.cum_modeled_time_s.size() == pr.iterations);
    CHECK(pr.final_loss == pr.loss_trace.back());
    CHECK(pr.cum_modeled_time_s[0] == pr.model.runtime_s);
  }
  // Lower precision reads less and can only be faster per iteration.
  CHECK(r.results[0].model.runtime_s <= r.results[2].model.runtime_s);
  CHECK(r.results[0].model.traffic_bits < r.results[2].model.traffic_bits);
}

TEST_CASE("sweep requires exactly one initialization source") {
  const BlobData blobs = gen_blobs({.n = 50, .d = 3, .k = 2, .spread = 0.05,
                                    .seed = 1});
  SweepConfig config = small_config();
  config.clusters = 2;
  config.center_seed.reset();
  CHECK_THROWS_AS(sweep(blobs.points, "x", config), DataError);
  config.center_seed = 1;
  config.init_centers = blobs.true_centers;
  CHECK_THROWS_AS(sweep(blobs.points, "x", config), DataError);
}

TEST_CASE("row duplication cannot move the trajectory under pinned centers") {
  const BlobData blobs = gen_blobs({.n = 90, .d = 4, .k = 3, .spread = 0.06,
                                    .seed = 21});
  SweepConfig config = small_config();
  config.center_seed.reset();
  config.init_centers = blobs.true_centers;

  const SweepReport once = sweep(blobs.points, "x", config);
  config.duplicate = 3;
  const SweepReport thrice = sweep(blobs.points, "x", config);

  // Centers and assignments repeat per copy, so iteration counts match and
  // the summed loss scales by exactly the duplication factor.
  CHECK(thrice.samples == 3 * once.samples);
  REQUIRE(once.results.size() == thrice.results.size());
  for (std::size_t i = 0; i < once.results.size(); ++i) {
    const PrecisionResult& a = once.results[i];
    const PrecisionResult& b = thrice.results[i];
    CHECK(a.iterations == b.iterations);
    CHECK(a.converged == b.converged);
    REQUIRE(a.loss_trace.size() == b.loss_trace.size());
    for (std::size_t t = 0; t < a.loss_trace.size(); ++t) {
      CHECK(b.loss_trace[t] == doctest::Approx(3.0 * a.loss_trace[t]).epsilon(1e-12));
    }
  }
}

TEST_CASE("the full-precision sweep entry matches the reference trainer") {
  const BlobData blobs = gen_blobs({.n = 160, .d = 5, .k = 3, .spread = 0.08,
                                    .seed = 31});
  const SweepConfig config = small_config();
  const SweepReport r = sweep(blobs.points, "x", config);

  const FixedMatrix q = quantize(blobs.points, fit_normalizer(blobs.points));
  const WeavedMatrix w = weave(q);
  const auto rows = seeded_center_rows(q.rows, 3, 7);
  const CenterSet init = centers_from_rows(q, rows, w.geometry.padded_features);
  TrainOptions opts;
  opts.precision = 32;
  opts.max_iters = config.max_iters;
  opts.tol = config.tol;
  const TrainResult ref =
      reference_lloyd(fraction_matrix(q), centers_to_fractions(init), opts);

  const PrecisionResult& full = r.results.back();
  REQUIRE(full.precision == 32);
  REQUIRE(full.loss_trace.size() == ref.loss_trace.size());
  for (std::size_t t = 0; t < ref.loss_trace.size(); ++t) {
    CHECK(full.loss_trace[t] == doctest::Approx(ref.loss_trace[t]).epsilon(1e-9));
  }
}

TEST_CASE("reports round-trip through JSON") {
  const BlobData blobs = gen_blobs({.n = 80, .d = 4, .k = 2, .spread = 0.06,
                                    .seed = 17});
  SweepConfig config = small_config();
  config.clusters = 2;
  const SweepReport r = sweep(blobs.points, "roundtrip", config);
  CHECK(report_from_json(report_to_json(r)) == r);

  test::ScratchDir scratch("report");
  emit_report(r, ReportFormat::kJson, scratch.file("r.json"));
  CHECK(load_report_json(scratch.file("r.json")) == r);
}

TEST_CASE("CSV emission writes one row per iteration plus a summary") {
  const BlobData blobs = gen_blobs({.n = 70, .d = 3, .k = 2, .spread = 0.05,
                                    .seed = 23});
  SweepConfig config = small_config();
  config.clusters = 2;
  const SweepReport r = sweep(blobs.points, "csv", config);

  test::ScratchDir scratch("reportcsv");
  const auto rows_path = scratch.file("out.csv");
  emit_report(r, ReportFormat::kCsv, rows_path);

  std::size_t expected = 0;
  for (const PrecisionResult& pr : r.results) expected += pr.iterations;

  std::ifstream in(rows_path);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "precision,iteration,loss,cum_modeled_time_s");
  std::size_t data_rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++data_rows;
  }
  CHECK(data_rows == expected);

  const auto spath = summary_path_for(rows_path);
  CHECK(spath.filename() == "out.summary.csv");
  std::ifstream sin(spath);
  REQUIRE(std::getline(sin, line));
  std::size_t summary_rows = 0;
  while (std::getline(sin, line)) {
    if (!line.empty()) ++summary_rows;
  }
  CHECK(summary_rows == r.results.size());
}

TEST_CASE("sweep reports are byte-identical across worker counts") {
  const BlobData blobs = gen_blobs({.n = 300, .d = 8, .k = 3, .spread = 0.05,
                                    .seed = 41});
  SweepConfig config = small_config();
  const std::string one = report_to_json(sweep(blobs.points, "det", config)).dump(2);
  config.workers = 8;
  const std::string eight = report_to_json(sweep(blobs.points, "det", config)).dump(2);
  CHECK(one == eight);
}

TEST_CASE("malformed report JSON is rejected") {
  CHECK_THROWS_AS(report_from_json(nlohmann::json{{"schema", "other/9"}}), DataError);
  CHECK_THROWS_AS(report_from_json(nlohmann::json::array()), DataError);
}
