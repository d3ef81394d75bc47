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
// Report serialization. JSON reports follow the "biskm-report/1" schema and
// round-trip losslessly; numbers print in shortest form, so identical runs
// yield byte-identical files.

#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include "biskm/perfmodel.hpp"
#include "biskm/sweep.hpp"

namespace biskm {

inline constexpr const char* kReportSchema = "biskm-report/1";

enum class ReportFormat { kJson, kCsv };

nlohmann::ordered_json hw_to_json(const HwParams& hw);

/// Parses device parameters; missing fields keep their defaults, wrongly
/// typed fields raise DataError.
HwParams hw_from_json(const nlohmann::json& j);
HwParams load_hw_json(const std::filesystem::path& path);

nlohmann::ordered_json estimate_to_json(const IterationEstimate& e);

nlohmann::ordered_json report_to_json(const SweepReport& report);
SweepReport report_from_json(const nlohmann::json& j);
SweepReport load_report_json(const std::filesystem::path& path);

/// Writes the report. kJson writes one file at `path`; kCsv writes
/// per-iteration rows at `path` plus a per-precision summary next to it
/// (see summary_path_for).
void emit_report(const SweepReport& report, ReportFormat format,
                 const std::filesystem::path& path);

/// out/report.csv -> out/report.summary.csv
std::filesystem::path summary_path_for(std::filesystem::path path);

}  // namespace biskm
