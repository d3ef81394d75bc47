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
// biskm command-line tool. Exit codes: 0 success, 1 usage error, 2 data or
// I/O error. Result payloads go to files or stdout; progress and timing go
// to stderr so a run's artifacts stay deterministic.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "biskm/blobs.hpp"
#include "biskm/csv.hpp"
#include "biskm/errors.hpp"
#include "biskm/kmeans.hpp"
#include "biskm/report.hpp"
#include "biskm/sweep.hpp"
#include "biskm/version.hpp"
#include "biskm/weave_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct GenDataArgs {
  std::uint64_t n = 0;
  std::uint32_t d = 0;
  std::uint32_t k = 0;
  std::uint64_t seed = 0;
  double spread = 0.05;
  std::string out;
  std::string labels_out;
};

struct WeaveArgs {
  std::string in;
  bool header = false;
  std::string out;
};

struct KmeansArgs {
  std::string in;
  std::uint32_t k = 0;
  std::uint32_t precision = 32;
  std::uint32_t max_iters = 100;
  double tol = 1e-6;
  std::string init;
  std::optional<std::uint64_t> seed;
  std::string report;
  std::string hw;
  unsigned workers = 1;
  std::string assignments_out;
  std::string centers_out;
};

struct SweepArgs {
  std::string in;
  bool header = false;
  std::vector<std::uint32_t> precisions = {1, 2, 4, 8, 16, 32};
  std::uint32_t k = 0;
  std::uint32_t max_iters = 100;
  double tol = 1e-6;
  std::string init;
  std::optional<std::uint64_t> seed;
  std::uint32_t duplicate = 1;
  unsigned workers = 1;
  std::string report;
  std::string csv;
  std::string hw;
};

struct ModelArgs {
  std::uint64_t n = 0;
  std::uint64_t d = 0;
  std::uint64_t k = 0;
  std::uint32_t precision = 32;
  std::string hw;
};

biskm::HwParams load_hw_or_default(const std::string& path) {
  if (path.empty()) return biskm::HwParams{};
  return biskm::load_hw_json(path);
}

// Centers for a .bisw run are given as fractions in [0, 1) on the 2^-32
// grid, the same form `--centers-out` writes, so the two round-trip.
biskm::CenterSet centers_from_fraction_csv(const std::string& path, std::uint32_t k,
                                           const biskm::WeaveGeometry& g) {
  const biskm::RealMatrix m = biskm::load_csv(path);
  if (m.rows != k || m.cols != g.n_features) {
    throw biskm::DataError("init centers must be " + std::to_string(k) + " x " +
                           std::to_string(g.n_features) + ", got " +
                           std::to_string(m.rows) + " x " + std::to_string(m.cols));
  }
  std::vector<std::uint32_t> raw(m.values.size());
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    const double v = m.values[i];
    if (!(v >= 0.0 && v < 1.0)) {
      throw biskm::DataError("init centers must lie in [0, 1)");
    }
    double r = std::nearbyint(v * 4294967296.0);
    if (r > 4294967295.0) r = 4294967295.0;
    raw[i] = static_cast<std::uint32_t>(r);
  }
  return biskm::preprocess_centers(raw, k, g.n_features, g.padded_features);
}

int run_gen_data(const GenDataArgs& a) {
  biskm::BlobSpec spec;
  spec.n = a.n;
  spec.d = a.d;
  spec.k = a.k;
  spec.spread = a.spread;
  spec.seed = a.seed;
  const biskm::BlobData blobs = biskm::gen_blobs(spec);
  biskm::save_csv(blobs.points, a.out);
  if (!a.labels_out.empty()) biskm::save_labels_csv(blobs.labels, a.labels_out);
  std::cerr << "wrote " << spec.n << " x " << spec.d << " samples to " << a.out
            << "\n";
  return kExitOk;
}

int run_weave(const WeaveArgs& a) {
  const biskm::RealMatrix data = biskm::load_csv(a.in, a.header);
  const biskm::Normalizer norm = biskm::fit_normalizer(data);
  const biskm::FixedMatrix q = biskm::quantize(data, norm);
  const biskm::WeavedMatrix w = biskm::weave(q);
  biskm::save_weaved(w, a.out);
  std::cerr << "weaved " << w.geometry.n_samples << " x " << w.geometry.n_features
            << " (" << w.geometry.word_count() << " lines) to " << a.out << "\n";
  return kExitOk;
}

int run_kmeans_cmd(const KmeansArgs& a) {
  const biskm::WeavedMatrix w = biskm::load_weaved(a.in);
  const biskm::WeaveGeometry& g = w.geometry;

  biskm::CenterSet init;
  if (!a.init.empty()) {
    init = centers_from_fraction_csv(a.init, a.k, g);
  } else {
    const biskm::FixedMatrix full = biskm::unweave(w, biskm::PrecisionLevel{32});
    const auto rows = biskm::seeded_center_rows(g.n_samples, a.k, *a.seed);
    init = biskm::centers_from_rows(full, rows, g.padded_features);
  }

  biskm::TrainOptions opts;
  opts.precision = a.precision;
  opts.max_iters = a.max_iters;
  opts.tol = a.tol;
  opts.workers = a.workers;

  const auto t0 = std::chrono::steady_clock::now();
  const biskm::TrainResult tr = biskm::run_kmeans(w, init, opts);
  const auto t1 = std::chrono::steady_clock::now();
  const double wall = std::chrono::duration<double>(t1 - t0).count();

  biskm::HwParams hw = load_hw_or_default(a.hw);
  hw.disp = g.layout.disp;
  hw.difp = g.layout.difp;
  hw.line_bits = g.layout.line_bits;

  biskm::SweepReport report;
  report.tool_version = biskm::kVersion;
  report.dataset_source = a.in;
  report.samples = g.n_samples;
  report.features = g.n_features;
  report.duplicate = 1;
  report.clusters = a.k;
  report.precisions = {a.precision};
  report.max_iters = a.max_iters;
  report.tol = a.tol;
  report.init_mode = a.init.empty() ? "seed" : "explicit";
  report.center_seed = a.seed;
  report.hw = hw;

  biskm::PrecisionResult pr;
  pr.precision = a.precision;
  pr.iterations = tr.iterations;
  pr.converged = tr.converged;
  pr.final_loss = tr.loss_trace.back();
  pr.loss_trace = tr.loss_trace;
  pr.model = biskm::estimate_iteration(g.n_samples, g.n_features, a.k,
                                       biskm::PrecisionLevel{a.precision}, hw);
  for (std::uint32_t i = 1; i <= tr.iterations; ++i) {
    pr.cum_modeled_time_s.push_back(static_cast<double>(i) * pr.model.runtime_s);
  }
  report.results.push_back(std::move(pr));

  biskm::emit_report(report, biskm::ReportFormat::kJson, a.report);
  if (!a.assignments_out.empty()) {
    biskm::save_labels_csv(tr.assignments, a.assignments_out);
  }
  if (!a.centers_out.empty()) {
    biskm::save_csv(biskm::centers_to_fractions(tr.centers), a.centers_out);
  }

  std::cerr << "p=" << a.precision << ": " << tr.iterations << " iterations, "
            << (tr.converged ? "converged" : "hit max-iters")
            << ", final loss " << biskm::format_double(tr.loss_trace.back())
            << ", wall " << biskm::format_double(wall) << " s\n";
  return kExitOk;
}

int run_sweep_cmd(const SweepArgs& a) {
  const biskm::RealMatrix data = biskm::load_csv(a.in, a.header);

  biskm::SweepConfig config;
  config.precisions = a.precisions;
  config.clusters = a.k;
  config.max_iters = a.max_iters;
  config.tol = a.tol;
  config.duplicate = a.duplicate;
  config.workers = a.workers;
  config.hw = load_hw_or_default(a.hw);
  if (!a.init.empty()) {
    config.init_centers = biskm::load_csv(a.init);
  } else {
    config.center_seed = *a.seed;
  }

  std::vector<double> wall;
  const biskm::SweepReport report = biskm::sweep(data, a.in, config, &wall);

  biskm::emit_report(report, biskm::ReportFormat::kJson, a.report);
  if (!a.csv.empty()) {
    biskm::emit_report(report, biskm::ReportFormat::kCsv, a.csv);
  }

  for (std::size_t i = 0; i < report.results.size(); ++i) {
    const biskm::PrecisionResult& pr = report.results[i];
    std::cerr << "p=" << pr.precision << ": " << pr.iterations << " iterations, "
              << "final loss " << biskm::format_double(pr.final_loss) << ", wall "
              << biskm::format_double(wall[i]) << " s\n";
  }
  std::cerr << "report written to " << a.report << "\n";
  return kExitOk;
}

int run_model(const ModelArgs& a) {
  const biskm::HwParams hw = load_hw_or_default(a.hw);
  const biskm::IterationEstimate e = biskm::estimate_iteration(
      a.n, a.d, a.k, biskm::PrecisionLevel{a.precision}, hw);
  std::cout << biskm::estimate_to_json(e).dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Any-precision K-Means over a bit-serial weaved layout"};
  app.set_version_flag("--version", biskm::kVersion);
  app.require_subcommand(1);

  GenDataArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen-data", "Generate Gaussian blob data");
  gen_cmd->add_option("--n", gen.n, "Sample count")->required();
  gen_cmd->add_option("--d", gen.d, "Feature count")->required();
  gen_cmd->add_option("--k", gen.k, "Cluster count")->required();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->default_val(0);
  gen_cmd->add_option("--spread", gen.spread, "Per-coordinate noise sigma")
      ->default_val(0.05);
  gen_cmd->add_option("--out", gen.out, "Output CSV")->required();
  gen_cmd->add_option("--labels-out", gen.labels_out, "True-label CSV");

  WeaveArgs weave_args;
  CLI::App* weave_cmd =
      app.add_subcommand("weave", "Quantize a CSV and store it weaved");
  weave_cmd->add_option("--in", weave_args.in, "Input CSV")->required();
  weave_cmd->add_flag("--header", weave_args.header, "Skip a CSV header row");
  weave_cmd->add_option("--out", weave_args.out, "Output .bisw file")->required();

  KmeansArgs km;
  CLI::App* km_cmd = app.add_subcommand("kmeans", "Cluster a weaved file");
  km_cmd->add_option("--in", km.in, "Input .bisw file")->required();
  km_cmd->add_option("--k", km.k, "Cluster count")->required();
  km_cmd->add_option("--precision", km.precision, "Bit planes to read, 1..32")
      ->required()
      ->check(CLI::Range(1u, 32u));
  km_cmd->add_option("--max-iters", km.max_iters, "Iteration cap")->default_val(100);
  km_cmd->add_option("--tol", km.tol, "Relative loss-change stop")->default_val(1e-6);
  CLI::Option* km_init =
      km_cmd->add_option("--init", km.init, "Initial centers CSV, fractions in [0, 1)");
  CLI::Option* km_seed =
      km_cmd->add_option("--seed", km.seed, "Sample initial centers under this seed");
  km_init->excludes(km_seed);
  km_seed->excludes(km_init);
  km_cmd->add_option("--report", km.report, "Output report JSON")->required();
  km_cmd->add_option("--hw", km.hw, "Device parameter JSON for the model");
  km_cmd->add_option("--workers", km.workers, "Threads per pass")->default_val(1);
  km_cmd->add_option("--assignments-out", km.assignments_out, "Assignment CSV");
  km_cmd->add_option("--centers-out", km.centers_out, "Final centers CSV");

  SweepArgs sw;
  CLI::App* sw_cmd =
      app.add_subcommand("sweep", "Run a precision sweep from a CSV dataset");
  sw_cmd->add_option("--in", sw.in, "Input CSV")->required();
  sw_cmd->add_flag("--header", sw.header, "Skip a CSV header row");
  sw_cmd->add_option("--precisions", sw.precisions, "Comma-separated precision list")
      ->delimiter(',');
  sw_cmd->add_option("--k", sw.k, "Cluster count")->required();
  sw_cmd->add_option("--max-iters", sw.max_iters, "Iteration cap")->default_val(100);
  sw_cmd->add_option("--tol", sw.tol, "Relative loss-change stop")->default_val(1e-6);
  CLI::Option* sw_init =
      sw_cmd->add_option("--init", sw.init, "Initial centers CSV in data units");
  CLI::Option* sw_seed =
      sw_cmd->add_option("--seed", sw.seed, "Sample initial centers under this seed");
  sw_init->excludes(sw_seed);
  sw_seed->excludes(sw_init);
  sw_cmd->add_option("--duplicate", sw.duplicate, "Row duplication factor")
      ->default_val(1);
  sw_cmd->add_option("--workers", sw.workers, "Threads per pass")->default_val(1);
  sw_cmd->add_option("--report", sw.report, "Output report JSON")->required();
  sw_cmd->add_option("--csv", sw.csv, "Also write per-iteration CSV here");
  sw_cmd->add_option("--hw", sw.hw, "Device parameter JSON");

  ModelArgs model;
  CLI::App* model_cmd =
      app.add_subcommand("model", "Print the modeled iteration estimate");
  model_cmd->add_option("--n", model.n, "Sample count")->required();
  model_cmd->add_option("--d", model.d, "Feature count")->required();
  model_cmd->add_option("--k", model.k, "Cluster count")->required();
  model_cmd->add_option("--precision", model.precision, "Bit planes, 1..32")
      ->required()
      ->check(CLI::Range(1u, 32u));
  model_cmd->add_option("--hw", model.hw, "Device parameter JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  // Seed defaults apply only when no explicit centers were given.
  if (km_cmd->parsed() && km.init.empty() && !km.seed) km.seed = 0;
  if (sw_cmd->parsed() && sw.init.empty() && !sw.seed) sw.seed = 0;

  try {
    if (gen_cmd->parsed()) return run_gen_data(gen);
    if (weave_cmd->parsed()) return run_weave(weave_args);
    if (km_cmd->parsed()) return run_kmeans_cmd(km);
    if (sw_cmd->parsed()) return run_sweep_cmd(sw);
    if (model_cmd->parsed()) return run_model(model);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
