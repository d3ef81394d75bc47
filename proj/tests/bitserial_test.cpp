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

#include "biskm/bitserial.hpp"

#include <doctest.h>

#include <stdexcept>

#include "biskm/errors.hpp"
#include "biskm/kmeans.hpp"
#include "support/testutil.hpp"

using namespace biskm;

namespace {

WeavedMatrix weave_single(std::uint32_t raw) {
  FixedMatrix m;
  m.rows = 1;
  m.cols = 1;
  m.values = {raw};
  return weave(m);
}

CenterVector padded_center(std::vector<std::uint32_t> coords, std::size_t width) {
  coords.resize(width, 0);
  return CenterVector{std::move(coords)};
}

}  // namespace

TEST_CASE("worked example: one value, one coordinate, two planes") {
  // x = 0x80000000 (0.5), c = 0x40000000 (0.25). Truncated to 2 bits x is
  // unchanged, so <x, c> = 2^31 * 2^30 = 2^61 raw, i.e. 0.125 at scale 2^-64.
  const WeavedMatrix w = weave_single(0x80000000u);
  const CenterVector c = padded_center({0x40000000u}, w.geometry.padded_features);
  const Score dot = bis_dot(w, 0, c, PrecisionLevel{2});
  CHECK(dot == Score{1} << 61);
  CHECK(score_to_double(dot) == 0.125);
}

TEST_CASE("truncation drops low planes from the product") {
  // x = 0xC0000001: at p = 2 only the top two bits survive.
  const WeavedMatrix w = weave_single(0xC0000001u);
  const CenterVector c = padded_center({0xFFFFFFFFu}, w.geometry.padded_features);
  const Score expected =
      static_cast<Score>(static_cast<uint128>(0xC0000000ull) * 0xFFFFFFFFull);
  CHECK(bis_dot(w, 0, c, PrecisionLevel{2}) == expected);
  const Score full =
      static_cast<Score>(static_cast<uint128>(0xC0000001ull) * 0xFFFFFFFFull);
  CHECK(bis_dot(w, 0, c, PrecisionLevel{32}) == full);
}

TEST_CASE("bis_dot equals the direct multiply-accumulate oracle") {
  for (std::size_t d : {std::size_t{1}, std::size_t{3}, std::size_t{16},
                        std::size_t{17}, std::size_t{33}}) {
    const FixedMatrix m = test::random_fixed(40, d, 0x1000 + d);
    const WeavedMatrix w = weave(m);
    const auto raw_c = test::random_raw(d, 0x2000 + d);
    const CenterVector c = padded_center({raw_c.begin(), raw_c.end()},
                                         w.geometry.padded_features);
    for (std::uint32_t p : {1u, 2u, 7u, 8u, 31u, 32u}) {
      for (std::uint64_t i : {std::uint64_t{0}, std::uint64_t{17},
                              std::uint64_t{32}, std::uint64_t{39}}) {
        std::vector<std::uint32_t> row(m.values.begin() + i * d,
                                       m.values.begin() + (i + 1) * d);
        const uint128 expected = test::dot_oracle(row, raw_c, p);
        CHECK(bis_dot(w, i, c, PrecisionLevel{p}) ==
              static_cast<Score>(expected));
      }
    }
  }
}

TEST_CASE("norm_sq is the exact 128-bit squared norm") {
  const std::vector<std::uint32_t> coords = {0xFFFFFFFFu, 0xFFFFFFFFu};
  const uint128 one = static_cast<uint128>(0xFFFFFFFFull * 0xFFFFFFFFull);
  CHECK(norm_sq(coords) == 2 * one);
  CHECK(norm_sq(std::vector<std::uint32_t>{}) == 0);
}

TEST_CASE("scores combine the norm and twice the dot product") {
  const FixedMatrix m = test::random_fixed(10, 20, 0x31337);
  const WeavedMatrix w = weave(m);
  const auto coords = test::random_raw(3 * 20, 0x51515);
  const CenterSet centers =
      preprocess_centers(coords, 3, 20, w.geometry.padded_features);
  for (std::uint32_t p : {1u, 8u, 32u}) {
    for (std::uint64_t i = 0; i < m.rows; ++i) {
      const auto s = scores(w, i, centers, PrecisionLevel{p});
      REQUIRE(s.size() == 3);
      for (std::size_t k = 0; k < 3; ++k) {
        CenterVector c{{centers.row(k).begin(), centers.row(k).end()}};
        const Score dot = bis_dot(w, i, c, PrecisionLevel{p});
        CHECK(s[k] == static_cast<Score>(centers.norms[k]) - 2 * dot);
      }
    }
  }
}

TEST_CASE("scores read only the first p planes") {
  const FixedMatrix m = test::random_fixed(34, 18, 0xdead);
  const WeavedMatrix w = weave(m);
  const auto coords = test::random_raw(2 * 18, 0xbeef);
  const CenterSet centers =
      preprocess_centers(coords, 2, 18, w.geometry.padded_features);

  const std::uint32_t p = 5;
  WeavedMatrix poisoned = w;
  const WeaveGeometry& g = poisoned.geometry;
  for (std::uint64_t b = 0; b < g.n_batches; ++b) {
    for (std::uint32_t t = p; t < kBitPlanes; ++t) {
      for (std::uint64_t f = 0; f < g.n_chunks; ++f) {
        const std::uint64_t word = g.word_index(b, t, f);
        for (std::uint64_t l = 0; l < g.lanes_per_word(); ++l) {
          poisoned.lanes[word * g.lanes_per_word() + l] = ~std::uint64_t{0};
        }
      }
    }
  }
  for (std::uint64_t i = 0; i < m.rows; ++i) {
    CHECK(scores(w, i, centers, PrecisionLevel{p}) ==
          scores(poisoned, i, centers, PrecisionLevel{p}));
  }
}

TEST_CASE("a lower precision never increases the dot product") {
  const FixedMatrix m = test::random_fixed(8, 24, 0x7777);
  const WeavedMatrix w = weave(m);
  const auto raw_c = test::random_raw(24, 0x8888);
  const CenterVector c = padded_center({raw_c.begin(), raw_c.end()},
                                       w.geometry.padded_features);
  for (std::uint64_t i = 0; i < m.rows; ++i) {
    Score prev = 0;
    for (std::uint32_t p = 1; p <= 32; ++p) {
      const Score dot = bis_dot(w, i, c, PrecisionLevel{p});
      CHECK(dot >= prev);
      prev = dot;
    }
  }
}

TEST_CASE("assign picks the smallest score, ties toward the lowest index") {
  const std::vector<Score> v = {Score{5}, Score{3}, Score{3}, Score{9}};
  CHECK(assign(v) == 1);
  const std::vector<Score> negative = {Score{-1}, Score{-7}, Score{0}};
  CHECK(assign(negative) == 1);
  const std::vector<Score> single = {Score{42}};
  CHECK(assign(single) == 0);
  CHECK_THROWS_AS(assign(std::vector<Score>{}), DataError);
}

TEST_CASE("identical centroids tie toward the lowest index end to end") {
  const FixedMatrix m = test::random_fixed(6, 4, 0x4141);
  const WeavedMatrix w = weave(m);
  auto coords = test::random_raw(4, 0x4242);
  coords.insert(coords.end(), coords.begin(), coords.end());  // duplicate row
  const CenterSet centers =
      preprocess_centers(coords, 2, 4, w.geometry.padded_features);
  for (std::uint64_t i = 0; i < m.rows; ++i) {
    const auto s = scores(w, i, centers, PrecisionLevel{16});
    CHECK(s[0] == s[1]);
    CHECK(assign(s) == 0);
  }
}

TEST_CASE("kernel inputs are shape-checked") {
  const FixedMatrix m = test::random_fixed(4, 4, 0x1212);
  const WeavedMatrix w = weave(m);
  const CenterVector narrow{{1u, 2u}};
  CHECK_THROWS_AS(bis_dot(w, 0, narrow, PrecisionLevel{8}), DataError);
  const CenterVector ok =
      padded_center({1u, 2u, 3u, 4u}, w.geometry.padded_features);
  CHECK_THROWS_AS(bis_dot(w, 4, ok, PrecisionLevel{8}), std::out_of_range);

  CenterSet bad = preprocess_centers(std::vector<std::uint32_t>(4, 1), 1, 4,
                                     w.geometry.padded_features);
  bad.norms.clear();
  CHECK_THROWS_AS(scores(w, 0, bad, PrecisionLevel{8}), DataError);
}
