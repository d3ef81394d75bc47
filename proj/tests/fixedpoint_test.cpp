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

#include "biskm/fixedpoint.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "biskm/errors.hpp"
#include "support/testutil.hpp"

using namespace biskm;

namespace {

RealMatrix column(std::initializer_list<double> values) {
  RealMatrix m;
  m.rows = values.size();
  m.cols = 1;
  m.values = values;
  return m;
}

}  // namespace

TEST_CASE("quantize maps column endpoints to the raw extremes") {
  const RealMatrix m = column({2.0, 6.0, 4.0});
  const Normalizer norm = fit_normalizer(m);
  const FixedMatrix q = quantize(m, norm);
  CHECK(q.at(0, 0) == 0u);
  CHECK(q.at(1, 0) == 0xFFFFFFFFu);
  CHECK(q.at(2, 0) == 0x80000000u);  // midpoint, half rounds away from zero
}

TEST_CASE("constant columns quantize to zero") {
  const RealMatrix m = column({3.5, 3.5, 3.5});
  const Normalizer norm = fit_normalizer(m);
  CHECK(norm.ranges[0] == 0.0);
  const FixedMatrix q = quantize(m, norm);
  for (std::uint32_t v : q.values) CHECK(v == 0u);
}

TEST_CASE("per-feature normalization is independent across columns") {
  RealMatrix m;
  m.rows = 2;
  m.cols = 2;
  m.values = {0.0, 100.0, 1.0, 300.0};
  const Normalizer norm = fit_normalizer(m);
  CHECK(norm.mins == std::vector<double>{0.0, 100.0});
  CHECK(norm.ranges == std::vector<double>{1.0, 200.0});
  const FixedMatrix q = quantize(m, norm);
  CHECK(q.at(0, 0) == 0u);
  CHECK(q.at(0, 1) == 0u);
  CHECK(q.at(1, 0) == 0xFFFFFFFFu);
  CHECK(q.at(1, 1) == 0xFFFFFFFFu);
}

TEST_CASE("fit_normalizer rejects non-finite values with position") {
  RealMatrix m;
  m.rows = 2;
  m.cols = 2;
  m.values = {0.0, 1.0, 2.0, std::numeric_limits<double>::quiet_NaN()};
  CHECK_THROWS_WITH_AS(fit_normalizer(m),
                       doctest::Contains("row 1, column 1"), DataError);
}

TEST_CASE("quantize rejects a dimension mismatch") {
  const RealMatrix m = column({0.0, 1.0});
  Normalizer norm = fit_normalizer(m);
  norm.mins.push_back(0.0);
  norm.ranges.push_back(1.0);
  CHECK_THROWS_AS(quantize(m, norm), DataError);
}

TEST_CASE("precision level validates its range") {
  CHECK_THROWS_AS(PrecisionLevel{0}, std::invalid_argument);
  CHECK_THROWS_AS(PrecisionLevel{33}, std::invalid_argument);
  CHECK(PrecisionLevel{1}.bits() == 1u);
  CHECK(PrecisionLevel{32}.bits() == 32u);
}

TEST_CASE("truncate_msb keeps the p most significant bits") {
  CHECK(truncate_msb(0xFFFFFFFFu, PrecisionLevel{1}) == 0x80000000u);
  CHECK(truncate_msb(0xFFFFFFFFu, PrecisionLevel{8}) == 0xFF000000u);
  CHECK(truncate_msb(0xFFFFFFFFu, PrecisionLevel{31}) == 0xFFFFFFFEu);
  CHECK(truncate_msb(0xFFFFFFFFu, PrecisionLevel{32}) == 0xFFFFFFFFu);
  CHECK(truncate_msb(0x00000001u, PrecisionLevel{31}) == 0u);
  CHECK(truncate_msb(0x12345678u, PrecisionLevel{32}) == 0x12345678u);
}

TEST_CASE("truncate_msb agrees with the bitwise oracle") {
  const auto raws = test::random_raw(256, 0xabcdef01);
  for (std::uint32_t p = 1; p <= 32; ++p) {
    for (std::uint32_t raw : raws) {
      CHECK(truncate_msb(raw, PrecisionLevel{p}) == test::truncate_oracle(raw, p));
    }
  }
}

TEST_CASE("truncate_matrix applies truncate_msb elementwise") {
  const FixedMatrix m = test::random_fixed(7, 5, 0x5eed);
  const FixedMatrix t = truncate_matrix(m, PrecisionLevel{9});
  REQUIRE(t.rows == m.rows);
  REQUIRE(t.cols == m.cols);
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    CHECK(t.values[i] == truncate_msb(m.values[i], PrecisionLevel{9}));
  }
}

TEST_CASE("dequantize inverts quantize within half a quantization step") {
  RealMatrix m;
  m.rows = 64;
  m.cols = 3;
  m.values.resize(m.rows * m.cols);
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    m.values[i] = -5.0 + 13.0 * rng_uniform(0x77, i);
  }
  const Normalizer norm = fit_normalizer(m);
  const FixedMatrix q = quantize(m, norm);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      const double step = norm.ranges[j] / 4294967295.0;
      CHECK(std::abs(dequantize(q.at(i, j), norm, j) - m.at(i, j)) <=
            step / 2 * (1 + 1e-12));
    }
  }
}

TEST_CASE("fraction_value is the raw value at scale 2^-32") {
  CHECK(fraction_value(0u) == 0.0);
  CHECK(fraction_value(0x80000000u) == 0.5);
  CHECK(fraction_value(0x40000000u) == 0.25);
  CHECK(fraction_value(0xFFFFFFFFu) == 1.0 - 0x1p-32);
}

TEST_CASE("fraction_matrix maps every raw value") {
  const FixedMatrix m = test::random_fixed(4, 4, 0x1234);
  const RealMatrix f = fraction_matrix(m);
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    CHECK(f.values[i] == fraction_value(m.values[i]));
  }
}
