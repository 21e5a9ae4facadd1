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

#ifndef GRADDP_RANDOM_HPP_
#define GRADDP_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <string>

namespace graddp {

// Counter-free xoshiro256++ generator. Chosen over the std engines because
// chains and mechanism states persist their generator to disk: the state is
// four 64-bit words, round-trips as a short hex string, and the output
// sequence does not depend on the platform or standard library.
class RandomSource {
 public:
  // Seeds all four state words from a splitmix64 sequence started at `seed`.
  explicit RandomSource(std::uint64_t seed = 0);

  // Independent stream for (seed, stream_id), e.g. one per vector coordinate
  // or one per sampling block. Distinct ids give decorrelated sequences.
  static RandomSource from_stream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform_open();

  // Uniform on (0, 1]; never returns 0, so log(u) is always finite.
  double uniform_positive();

  // Uniformly distributed sign, -1.0 or +1.0.
  double sign();

  // State as 4 fixed-width hex words separated by ':' (e.g. for persistence).
  std::string state_string() const;
  static RandomSource from_state_string(const std::string& text);

  friend bool operator==(const RandomSource&, const RandomSource&) = default;

 private:
  std::array<std::uint64_t, 4> state_;
};

namespace detail {
std::uint64_t splitmix64(std::uint64_t& x);
}  // namespace detail

}  // namespace graddp

#endif  // GRADDP_RANDOM_HPP_
