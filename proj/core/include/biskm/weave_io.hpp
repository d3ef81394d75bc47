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
// The .bisw container, little-endian throughout:
//
//   offset  size  field
//        0     4  magic "BISW"
//        4     2  format version (1)
//        6     2  disp
//        8     2  difp
//       10     4  line_bits
//       14     8  sample count
//       22     4  feature count
//       26     4  padded feature count
//       30     -  lines in word_index order, each line_bits/64 uint64 lanes
//      end     4  CRC-32 of the line bytes
//
// The byte image of a weaved matrix is a pure function of its contents, so
// equal matrices always serialize to identical files.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "biskm/weave.hpp"

namespace biskm {

inline constexpr std::uint16_t kBiswVersion = 1;

/// Size of the fixed header that precedes the line payload.
inline constexpr std::size_t kBiswHeaderBytes = 30;

std::vector<std::uint8_t> serialize(const WeavedMatrix& w);

/// Parses a .bisw image. Throws FormatError; the kind() distinguishes a bad
/// magic, an unsupported version, a truncated payload, a checksum mismatch,
/// an inconsistent header, and a shape beyond the layout bound.
WeavedMatrix deserialize(std::span<const std::uint8_t> bytes);

void save_weaved(const WeavedMatrix& w, const std::filesystem::path& path);
WeavedMatrix load_weaved(const std::filesystem::path& path);

}  // namespace biskm
