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

#include "biskm/weave_io.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <string>

#include "biskm/errors.hpp"

namespace biskm {
namespace {

constexpr char kMagic[4] = {'B', 'I', 'S', 'W'};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (std::uint16_t{p[1]} << 8));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{p[i]} << (8 * i);
  return v;
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{p[i]} << (8 * i);
  return v;
}

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large payloads in slices.
  std::size_t off = 0;
  while (off < bytes.size()) {
    const std::size_t n = std::min<std::size_t>(bytes.size() - off, 1u << 30);
    crc = crc32(crc, bytes.data() + off, static_cast<uInt>(n));
    off += n;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::vector<std::uint8_t> serialize(const WeavedMatrix& w) {
  const WeaveGeometry& g = w.geometry;
  const std::size_t payload = w.lanes.size() * 8;
  std::vector<std::uint8_t> out;
  out.reserve(kBiswHeaderBytes + payload + 4);

  out.insert(out.end(), kMagic, kMagic + 4);
  put_u16(out, kBiswVersion);
  put_u16(out, static_cast<std::uint16_t>(g.layout.disp));
  put_u16(out, static_cast<std::uint16_t>(g.layout.difp));
  put_u32(out, g.layout.line_bits);
  put_u64(out, g.n_samples);
  put_u32(out, g.n_features);
  put_u32(out, g.padded_features);

  for (std::uint64_t lane : w.lanes) put_u64(out, lane);

  const std::uint32_t crc =
      crc32_of({out.data() + kBiswHeaderBytes, payload});
  put_u32(out, crc);
  return out;
}

WeavedMatrix deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) {
    throw FormatError(FormatErrorKind::kTruncated,
                      "bisw: stream too short for the magic");
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw FormatError(FormatErrorKind::kBadMagic, "bisw: bad magic");
  }
  if (bytes.size() < 6) {
    throw FormatError(FormatErrorKind::kTruncated,
                      "bisw: stream too short for the version");
  }
  const std::uint16_t version = get_u16(bytes.data() + 4);
  if (version != kBiswVersion) {
    throw FormatError(FormatErrorKind::kBadVersion,
                      "bisw: unsupported format version " + std::to_string(version));
  }
  if (bytes.size() < kBiswHeaderBytes) {
    throw FormatError(FormatErrorKind::kTruncated,
                      "bisw: stream too short for the header");
  }

  LayoutParams layout;
  layout.disp = get_u16(bytes.data() + 6);
  layout.difp = get_u16(bytes.data() + 8);
  layout.line_bits = get_u32(bytes.data() + 10);
  const std::uint64_t n_samples = get_u64(bytes.data() + 14);
  const std::uint32_t n_features = get_u32(bytes.data() + 22);
  const std::uint32_t padded_features = get_u32(bytes.data() + 26);

  if (n_features > kMaxFeatures) {
    throw FormatError(FormatErrorKind::kHardwareBound,
                      "bisw: " + std::to_string(n_features) +
                          " features exceed the layout bound of " +
                          std::to_string(kMaxFeatures));
  }
  WeaveGeometry g;
  try {
    g = WeaveGeometry::create(layout, n_samples, n_features);
  } catch (const DataError& e) {
    throw FormatError(FormatErrorKind::kBadHeader, e.what());
  }
  if (g.padded_features != padded_features) {
    throw FormatError(FormatErrorKind::kBadHeader,
                      "bisw: padded feature count " + std::to_string(padded_features) +
                          " does not match the layout");
  }

  const std::size_t payload = g.word_count() * g.lanes_per_word() * 8;
  const std::size_t expected = kBiswHeaderBytes + payload + 4;
  if (bytes.size() < expected) {
    throw FormatError(FormatErrorKind::kTruncated,
                      "bisw: stream holds " + std::to_string(bytes.size()) +
                          " bytes, expected " + std::to_string(expected));
  }
  if (bytes.size() > expected) {
    throw FormatError(FormatErrorKind::kBadHeader,
                      "bisw: " + std::to_string(bytes.size() - expected) +
                          " trailing bytes after the checksum");
  }

  const std::uint32_t stored = get_u32(bytes.data() + kBiswHeaderBytes + payload);
  const std::uint32_t actual = crc32_of(bytes.subspan(kBiswHeaderBytes, payload));
  if (stored != actual) {
    throw FormatError(FormatErrorKind::kBadChecksum, "bisw: checksum mismatch");
  }

  WeavedMatrix w;
  w.geometry = g;
  w.lanes.resize(payload / 8);
  for (std::size_t i = 0; i < w.lanes.size(); ++i) {
    w.lanes[i] = get_u64(bytes.data() + kBiswHeaderBytes + i * 8);
  }
  return w;
}

void save_weaved(const WeavedMatrix& w, const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = serialize(w);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("bisw: cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("bisw: write to " + path.string() + " failed");
}

WeavedMatrix load_weaved(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("bisw: cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace biskm
