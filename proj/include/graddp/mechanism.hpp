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

#ifndef GRADDP_MECHANISM_HPP_
#define GRADDP_MECHANISM_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "graddp/chain.hpp"
#include "graddp/laws.hpp"

namespace graddp {

// The private data u in R^n. Adjacency is ||u - u'||_1 <= alpha, carried by
// the mechanism's adjacency scale rather than the vector itself.
class PrivateVector {
 public:
  explicit PrivateVector(std::vector<double> values);
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

// One released response y = u + V. Levels are tracked in both accountings:
// eps_lipschitz = eps_dp / alpha is what the noise laws run on.
struct Response {
  double eps_dp = 0.0;
  double eps_lipschitz = 0.0;
  std::vector<double> values;
};

// Persistent releasable object: the data, one noise chain per coordinate
// (all kept at the same set of levels), the adjacency scale, and the seed
// the per-coordinate generators derive from.
class MechanismState {
 public:
  MechanismState(PrivateVector data, double alpha, std::uint64_t seed);

  // Releases y = u + V at the requested differential-privacy level. The
  // internal chains run at eps_dp / alpha. Re-releasing a level returns the
  // bit-identical response; a level strictly between two released levels
  // throws BridgeUnsupportedError with the bracketing dp levels.
  Response release(PrivacyLevel eps_dp);

  std::size_t size() const { return data_.size(); }
  double alpha() const { return alpha_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<double>& data() const { return data_.values(); }
  // Differential-privacy levels released so far, ascending.
  const std::vector<double>& released_levels() const { return released_dp_; }
  const std::vector<JumpChain>& chains() const { return chains_; }

  std::string serialize() const;
  static MechanismState deserialize(const std::string& record);

 private:
  PrivateVector data_;
  double alpha_;
  std::uint64_t seed_;
  std::vector<double> released_dp_;  // ascending
  std::vector<JumpChain> chains_;    // empty until the first release
};

// Produces a strictly more private response from a released one, without
// the mechanism state or the data: per coordinate the value is kept with
// probability (eps_lower/eps)^2 and otherwise gets fresh Laplace noise at
// the tighter level. Anyone holding the response can run this.
Response tighten_for_third_party(const Response& response,
                                 PrivacyLevel eps_dp_lower, double alpha,
                                 RandomSource& rng);

// Baseline two-step release that budgets by summing: the first response is
// Laplace at eps1, the second independent Laplace at eps2 - eps1. Kept for
// accuracy comparisons only.
std::pair<Response, Response> naive_composition_release(
    const PrivateVector& data, PrivacyLevel eps1_dp, PrivacyLevel eps2_dp,
    double alpha, std::uint64_t seed);

}  // namespace graddp

#endif  // GRADDP_MECHANISM_HPP_
