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

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "biskm/fixedpoint.hpp"

namespace biskm {

/// Loads a rectangular numeric CSV. Every row must parse to the same number
/// of finite doubles; violations raise DataError naming the line.
RealMatrix load_csv(const std::filesystem::path& path, bool has_header = false);

/// Writes a matrix as CSV with shortest-round-trip doubles.
void save_csv(const RealMatrix& m, const std::filesystem::path& path);

void save_labels_csv(std::span<const std::uint32_t> labels,
                     const std::filesystem::path& path);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace biskm
