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

#ifndef GRADDP_CHAIN_HPP_
#define GRADDP_CHAIN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "graddp/laws.hpp"
#include "graddp/random.hpp"

namespace graddp {

// One sampled path of the noise family {V_eps}, stored as the finite list
// of levels that have been queried so far. Levels are strictly increasing;
// equal noise values at consecutive levels are the lazy no-jump case.
//
// The generator is part of the chain, so persisting and resuming a chain
// replays exactly the draws a single uninterrupted session would have made.
// Chains are single-writer: callers serialize extending queries externally.
class JumpChain {
 public:
  struct Point {
    double eps;
    double noise;
  };

  // Starts a path with one Laplace(1/eps) sample at the given level.
  JumpChain(PrivacyLevel eps, RandomSource rng);

  // Value of the path at `eps`.
  //   - A stored level returns its value unchanged and draws nothing.
  //   - A level above the maximum extends forward (relax) and appends.
  //   - A level below the minimum extends backward (tighten) and prepends.
  //   - A level strictly inside the stored range throws
  //     BridgeUnsupportedError naming the bracketing levels.
  double query(PrivacyLevel eps);

  // Drops interior points that carry no jump (noise equal to the previous
  // point's, bit-exact). Endpoints always stay; dropped levels become
  // interior and can no longer be re-queried.
  void compact();

  const std::vector<Point>& points() const { return points_; }
  const RandomSource& rng() const { return rng_; }

  // Versioned self-describing text record. Levels and noise values are
  // hex floats, so the round trip is bit-exact and restores the generator.
  std::string serialize() const;
  static JumpChain deserialize(const std::string& record);

 private:
  JumpChain() = default;

  std::vector<Point> points_;
  RandomSource rng_{0};
};

}  // namespace graddp

#endif  // GRADDP_CHAIN_HPP_
