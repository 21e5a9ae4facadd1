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

#include <cstdio>
#include <stdexcept>

namespace graddp {

namespace detail {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

RandomSource::RandomSource(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& word : state_) word = detail::splitmix64(x);
}

RandomSource RandomSource::from_stream(std::uint64_t seed,
                                       std::uint64_t stream_id) {
  // Mix the stream id through splitmix64 before combining so that
  // consecutive ids land far apart in seed space.
  std::uint64_t s = stream_id;
  return RandomSource(seed ^ detail::splitmix64(s));
}

std::uint64_t RandomSource::next_u64() {
  const std::uint64_t result =
      detail::rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = detail::rotl(state_[3], 45);
  return result;
}

double RandomSource::uniform_open() {
  // 53 random bits shifted into (0, 1): offset by 1/2 ulp at both ends.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomSource::uniform_positive() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double RandomSource::sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

std::string RandomSource::state_string() const {
  char buf[4 * 17 + 1];
  std::snprintf(buf, sizeof(buf), "%016llx:%016llx:%016llx:%016llx",
                static_cast<unsigned long long>(state_[0]),
                static_cast<unsigned long long>(state_[1]),
                static_cast<unsigned long long>(state_[2]),
                static_cast<unsigned long long>(state_[3]));
  return buf;
}

RandomSource RandomSource::from_state_string(const std::string& text) {
  RandomSource rng(0);
  unsigned long long w[4];
  if (std::sscanf(text.c_str(), "%16llx:%16llx:%16llx:%16llx", &w[0], &w[1],
                  &w[2], &w[3]) != 4)
    throw std::invalid_argument("malformed random source state: " + text);
  for (int i = 0; i < 4; ++i) rng.state_[i] = w[i];
  return rng;
}

}  // namespace graddp
