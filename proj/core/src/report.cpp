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

#include "biskm/report.hpp"

#include <fstream>
#include <string>

#include "biskm/csv.hpp"
#include "biskm/errors.hpp"

namespace biskm {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <typename T>
T field_or(const json& j, const char* key, T fallback) {
  try {
    return j.value(key, fallback);
  } catch (const json::exception& e) {
    throw DataError("json: bad field '" + std::string(key) + "': " + e.what());
  }
}

template <typename T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw DataError("json: missing field '" + std::string(key) + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DataError("json: bad field '" + std::string(key) + "': " + e.what());
  }
}

IterationEstimate estimate_from_json(const json& j) {
  IterationEstimate e;
  e.traffic_bits = required<std::uint64_t>(j, "traffic_bits");
  e.compute_cycles = required<double>(j, "compute_cycles");
  e.effective_bandwidth_bytes_per_s =
      required<double>(j, "effective_bandwidth_bytes_per_s");
  e.runtime_s = required<double>(j, "runtime_s");
  e.throughput_bytes_per_s = required<double>(j, "throughput_bytes_per_s");
  e.speedup_vs_32 = required<double>(j, "speedup_vs_32");
  e.hardware_faithful = required<bool>(j, "hardware_faithful");
  return e;
}

}  // namespace

ordered_json estimate_to_json(const IterationEstimate& e) {
  return ordered_json{{"traffic_bits", e.traffic_bits},
                      {"compute_cycles", e.compute_cycles},
                      {"effective_bandwidth_bytes_per_s", e.effective_bandwidth_bytes_per_s},
                      {"runtime_s", e.runtime_s},
                      {"throughput_bytes_per_s", e.throughput_bytes_per_s},
                      {"speedup_vs_32", e.speedup_vs_32},
                      {"hardware_faithful", e.hardware_faithful}};
}

ordered_json hw_to_json(const HwParams& hw) {
  return ordered_json{
      {"disp", hw.disp},
      {"difp", hw.difp},
      {"line_bits", hw.line_bits},
      {"frequency_hz", hw.frequency_hz},
      {"peak_bandwidth_bytes_per_s", hw.peak_bandwidth_bytes_per_s},
      {"platform_cap_bytes_per_s", hw.platform_cap_bytes_per_s},
      {"overhead_alpha", hw.overhead_alpha},
      {"overhead_beta", hw.overhead_beta},
      {"row_buffer",
       ordered_json{{"enabled", hw.row_buffer.enabled},
                    {"plane_extent", hw.row_buffer.plane_extent},
                    {"min_hit_fraction", hw.row_buffer.min_hit_fraction},
                    {"hit_saturation", hw.row_buffer.hit_saturation},
                    {"miss_penalty", hw.row_buffer.miss_penalty}}}};
}

HwParams hw_from_json(const json& j) {
  if (!j.is_object()) throw DataError("hw: expected a JSON object");
  HwParams hw;
  hw.disp = field_or(j, "disp", hw.disp);
  hw.difp = field_or(j, "difp", hw.difp);
  hw.line_bits = field_or(j, "line_bits", hw.line_bits);
  hw.frequency_hz = field_or(j, "frequency_hz", hw.frequency_hz);
  hw.peak_bandwidth_bytes_per_s =
      field_or(j, "peak_bandwidth_bytes_per_s", hw.peak_bandwidth_bytes_per_s);
  hw.platform_cap_bytes_per_s =
      field_or(j, "platform_cap_bytes_per_s", hw.platform_cap_bytes_per_s);
  hw.overhead_alpha = field_or(j, "overhead_alpha", hw.overhead_alpha);
  hw.overhead_beta = field_or(j, "overhead_beta", hw.overhead_beta);
  if (j.contains("row_buffer")) {
    const json& rb = j.at("row_buffer");
    if (!rb.is_object()) throw DataError("hw: row_buffer must be an object");
    hw.row_buffer.enabled = field_or(rb, "enabled", hw.row_buffer.enabled);
    hw.row_buffer.plane_extent = field_or(rb, "plane_extent", hw.row_buffer.plane_extent);
    hw.row_buffer.min_hit_fraction =
        field_or(rb, "min_hit_fraction", hw.row_buffer.min_hit_fraction);
    hw.row_buffer.hit_saturation =
        field_or(rb, "hit_saturation", hw.row_buffer.hit_saturation);
    hw.row_buffer.miss_penalty =
        field_or(rb, "miss_penalty", hw.row_buffer.miss_penalty);
  }
  hw.validate();
  return hw;
}

HwParams load_hw_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("hw: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("hw: " + path.string() + ": " + e.what());
  }
  return hw_from_json(j);
}

ordered_json report_to_json(const SweepReport& r) {
  ordered_json init{{"mode", r.init_mode}};
  if (r.center_seed) init["seed"] = *r.center_seed;

  ordered_json results = ordered_json::array();
  for (const PrecisionResult& pr : r.results) {
    results.push_back(ordered_json{{"precision", pr.precision},
                                   {"iterations", pr.iterations},
                                   {"converged", pr.converged},
                                   {"final_loss", pr.final_loss},
                                   {"loss_trace", pr.loss_trace},
                                   {"cum_modeled_time_s", pr.cum_modeled_time_s},
                                   {"model", estimate_to_json(pr.model)}});
  }

  return ordered_json{
      {"schema", kReportSchema},
      {"tool_version", r.tool_version},
      {"dataset",
       ordered_json{{"source", r.dataset_source},
                    {"samples", r.samples},
                    {"features", r.features},
                    {"duplicate", r.duplicate}}},
      {"config", ordered_json{{"clusters", r.clusters},
                              {"precisions", r.precisions},
                              {"max_iters", r.max_iters},
                              {"tol", r.tol},
                              {"init", init}}},
      {"hw", hw_to_json(r.hw)},
      {"results", results}};
}

SweepReport report_from_json(const json& j) {
  if (!j.is_object()) throw DataError("report: expected a JSON object");
  const std::string schema = required<std::string>(j, "schema");
  if (schema != kReportSchema) {
    throw DataError("report: unsupported schema '" + schema + "'");
  }
  SweepReport r;
  r.tool_version = required<std::string>(j, "tool_version");

  const json& dataset = j.at("dataset");
  r.dataset_source = required<std::string>(dataset, "source");
  r.samples = required<std::uint64_t>(dataset, "samples");
  r.features = required<std::uint32_t>(dataset, "features");
  r.duplicate = required<std::uint32_t>(dataset, "duplicate");

  const json& config = j.at("config");
  r.clusters = required<std::uint32_t>(config, "clusters");
  r.precisions = required<std::vector<std::uint32_t>>(config, "precisions");
  r.max_iters = required<std::uint32_t>(config, "max_iters");
  r.tol = required<double>(config, "tol");
  const json& init = config.at("init");
  r.init_mode = required<std::string>(init, "mode");
  if (init.contains("seed")) r.center_seed = required<std::uint64_t>(init, "seed");

  r.hw = hw_from_json(j.at("hw"));

  for (const json& pj : j.at("results")) {
    PrecisionResult pr;
    pr.precision = required<std::uint32_t>(pj, "precision");
    pr.iterations = required<std::uint32_t>(pj, "iterations");
    pr.converged = required<bool>(pj, "converged");
    pr.final_loss = required<double>(pj, "final_loss");
    pr.loss_trace = required<std::vector<double>>(pj, "loss_trace");
    pr.cum_modeled_time_s = required<std::vector<double>>(pj, "cum_modeled_time_s");
    pr.model = estimate_from_json(pj.at("model"));
    r.results.push_back(std::move(pr));
  }
  return r;
}

SweepReport load_report_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("report: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("report: " + path.string() + ": " + e.what());
  }
  return report_from_json(j);
}

std::filesystem::path summary_path_for(std::filesystem::path path) {
  const std::string ext = path.extension().string();
  path.replace_extension();
  path += ".summary";
  path += ext.empty() ? ".csv" : ext;
  return path;
}

void emit_report(const SweepReport& report, ReportFormat format,
                 const std::filesystem::path& path) {
  if (format == ReportFormat::kJson) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("report: cannot open " + path.string() + " for writing");
    out << report_to_json(report).dump(2) << '\n';
    if (!out) throw DataError("report: write to " + path.string() + " failed");
    return;
  }

  std::ofstream rows(path, std::ios::trunc);
  if (!rows) throw DataError("report: cannot open " + path.string() + " for writing");
  rows << "precision,iteration,loss,cum_modeled_time_s\n";
  for (const PrecisionResult& pr : report.results) {
    for (std::uint32_t i = 0; i < pr.iterations; ++i) {
      rows << pr.precision << ',' << (i + 1) << ',' << format_double(pr.loss_trace[i])
           << ',' << format_double(pr.cum_modeled_time_s[i]) << '\n';
    }
  }
  if (!rows) throw DataError("report: write to " + path.string() + " failed");

  const std::filesystem::path spath = summary_path_for(path);
  std::ofstream summary(spath, std::ios::trunc);
  if (!summary) throw DataError("report: cannot open " + spath.string() + " for writing");
  summary << "precision,iterations,converged,final_loss,runtime_per_iter_s,"
             "traffic_bits,effective_bandwidth_bytes_per_s,throughput_bytes_per_s,"
             "speedup_vs_32\n";
  for (const PrecisionResult& pr : report.results) {
    summary << pr.precision << ',' << pr.iterations << ',' << (pr.converged ? 1 : 0)
            << ',' << format_double(pr.final_loss) << ','
            << format_double(pr.model.runtime_s) << ',' << pr.model.traffic_bits << ','
            << format_double(pr.model.effective_bandwidth_bytes_per_s) << ','
            << format_double(pr.model.throughput_bytes_per_s) << ','
            << format_double(pr.model.speedup_vs_32) << '\n';
  }
  if (!summary) throw DataError("report: write to " + spath.string() + " failed");
}

}  // namespace biskm
