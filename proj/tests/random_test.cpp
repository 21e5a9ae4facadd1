// Copyright 2026 The graddp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "graddp/random.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <limits>
#include <vector>

#include <doctest.h>

#include "graddp/hexfloat.hpp"

using graddp::RandomSource;

TEST_CASE("generator is deterministic per seed and distinct per stream") {
  RandomSource a(42), b(42), c(43);
  bool all_equal = true, any_equal_to_c = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    all_equal = all_equal && va == b.next_u64();
    any_equal_to_c = any_equal_to_c || va == c.next_u64();
  }
  CHECK(all_equal);
  CHECK_FALSE(any_equal_to_c);

  RandomSource s0 = RandomSource::from_stream(7, 0);
  RandomSource s1 = RandomSource::from_stream(7, 1);
  CHECK(s0.next_u64() != s1.next_u64());
}

TEST_CASE("uniform variates respect their intervals") {
  RandomSource rng(1);
  double lo_open = 1.0, hi_open = 0.0, lo_pos = 1.0;
  for (int i = 0; i < 1000000; ++i) {
    const double u = rng.uniform_open();
    const double v = rng.uniform_positive();
    lo_open = std::min(lo_open, u);
    hi_open = std::max(hi_open, u);
    lo_pos = std::min(lo_pos, v);
    CHECK_UNARY(v <= 1.0);
  }
  CHECK(lo_open > 0.0);
  CHECK(hi_open < 1.0);
  CHECK(lo_pos > 0.0);
  // log of a positive variate is always finite.
  CHECK(std::isfinite(std::log(lo_pos)));
}

TEST_CASE("sign is plus or minus one") {
  RandomSource rng(2);
  int plus = 0;
  for (int i = 0; i < 10000; ++i) {
    const double s = rng.sign();
    CHECK((s == 1.0 || s == -1.0));
    plus += s > 0;
  }
  CHECK(plus > 4000);
  CHECK(plus < 6000);
}

TEST_CASE("state round trip resumes the exact sequence") {
  RandomSource rng(99);
  for (int i = 0; i < 17; ++i) rng.next_u64();
  const std::string state = rng.state_string();
  RandomSource resumed = RandomSource::from_state_string(state);
  CHECK(resumed == rng);
  for (int i = 0; i < 32; ++i) CHECK(resumed.next_u64() == rng.next_u64());

  CHECK_THROWS_AS(RandomSource::from_state_string("not-a-state"),
                  std::invalid_argument);
  CHECK_THROWS_AS(RandomSource::from_state_string(""),
                  std::invalid_argument);
}

TEST_CASE("hex float encoding round trips bit-exactly") {
  using graddp::from_hex_float;
  using graddp::to_hex_float;
  RandomSource rng(3);
  std::vector<double> values = {0.0,
                                -0.0,
                                1.0,
                                -1.0,
                                1.0 / 3.0,
                                std::numeric_limits<double>::denorm_min(),
                                -std::numeric_limits<double>::max(),
                                5e-324};
  for (int i = 0; i < 200; ++i)
    values.push_back((2.0 * rng.uniform_open() - 1.0) *
                     std::pow(10.0, static_cast<int>(20 * rng.uniform_open()) -
                                        10));
  for (double v : values) {
    const double back = from_hex_float(to_hex_float(v));
    CHECK(std::bit_cast<std::uint64_t>(back) ==
          std::bit_cast<std::uint64_t>(v));
  }
  CHECK(from_hex_float("1.5") == 1.5);  // plain decimals parse too
  CHECK_THROWS_AS(from_hex_float("0x1.8p+"), std::invalid_argument);
  CHECK_THROWS_AS(from_hex_float("banana"), std::invalid_argument);
  CHECK_THROWS_AS(from_hex_float("1.5 trailing"), std::invalid_argument);
}
