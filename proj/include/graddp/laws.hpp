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
//
// Exact densities and samplers for the coupled family of Laplace noises
// indexed by the privacy level epsilon. The two-level joint law is
//
//   l_{e1,e2}(x, y) = e1^2/(2 e2) exp(-e2|y|) [x = y]
//                   + e1 (e2^2 - e1^2)/(4 e2) exp(-e1|x-y| - e2|y|),
//
// a point mass on the diagonal plus a continuous component. Both marginals
// are Laplace (1/e1 for x, 1/e2 for y). The forward transition x -> y keeps
// x with the atom mass (e1/e2) exp(-(e2-e1)|x|); the backward transition
// y -> x keeps y with mass (e1/e2)^2 and otherwise adds Laplace(1/e1) noise.

#ifndef GRADDP_LAWS_HPP_
#define GRADDP_LAWS_HPP_

#include <array>

#include "graddp/random.hpp"

namespace graddp {

// Lipschitz privacy parameter epsilon. Strictly positive and finite.
class PrivacyLevel {
 public:
  explicit PrivacyLevel(double value);
  double value() const { return value_; }

  friend bool operator==(PrivacyLevel a, PrivacyLevel b) {
    return a.value_ == b.value_;
  }
  friend auto operator<=>(PrivacyLevel a, PrivacyLevel b) {
    return a.value_ <=> b.value_;
  }

 private:
  double value_;
};

// An ordered pair of levels e1 <= e2 (the tighter and the looser level).
class LevelPair {
 public:
  LevelPair(PrivacyLevel eps1, PrivacyLevel eps2);
  PrivacyLevel eps1() const { return eps1_; }
  PrivacyLevel eps2() const { return eps2_; }

 private:
  PrivacyLevel eps1_;
  PrivacyLevel eps2_;
};

// Decomposition of the transition law out of a conditioning value x:
// a point mass at x plus three truncated-exponential branches covering
// (in units of z = y / sgn(x)) z <= 0, 0 <= z <= |x|, and z >= |x|.
struct ConditionalLaw {
  double atom_location = 0.0;
  double atom_mass = 0.0;
  std::array<double, 3> branch_weights{};  // opposite side, interior, far tail
  double source_noise = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
};

// Value of the two-level joint law at a point (x, y). The diagonal
// coefficient is the density in y of the point-mass component and is
// reported only when x equals y bit-exactly.
struct JointDensityValue {
  double diagonal_coefficient = 0.0;
  double continuous_density = 0.0;
};

struct JointLogDensityValue {
  double log_diagonal_coefficient = 0.0;  // -inf off the diagonal
  double log_continuous_density = 0.0;
};

// Relaxations with eps2 at or above this threshold release the exact value:
// the conditional collapses to a point mass at zero.
inline constexpr double kInfiniteLevelThreshold = 1e12;

// Laplace density (eps/2) exp(-eps |x|) and its log form.
double laplace_pdf(double x, PrivacyLevel eps);
double laplace_log_pdf(double x, PrivacyLevel eps);

// Laplace distribution function: exp(eps x)/2 left of zero, 1 - exp(-eps x)/2
// at and right of zero.
double laplace_cdf(double x, PrivacyLevel eps);

// Draws Laplace(1/eps) noise by inverting the distribution function.
double laplace_sample(PrivacyLevel eps, RandomSource& rng);

// Two-level joint law evaluated at (x, y), split into the diagonal and
// continuous components; log-space companions for the tails.
JointDensityValue joint_pdf(double x, double y, const LevelPair& pair);
JointLogDensityValue joint_log_pdf(double x, double y, const LevelPair& pair);

// Mass of the point-mass component of the forward transition out of x,
// (e1/e2) exp(-(e2-e1)|x|), and its log.
double forward_atom_mass(double x, const LevelPair& pair);
double forward_atom_log_mass(double x, const LevelPair& pair);

// Continuous part of the forward transition density p(y | x), which equals
// (e2^2-e1^2)/(2 e2) exp(-e1|y-x| - e2|y| + e1|x|), and its log.
double forward_conditional_continuous_pdf(double y, double x,
                                          const LevelPair& pair);
double forward_conditional_continuous_log_pdf(double y, double x,
                                              const LevelPair& pair);

// Full mixture decomposition of the forward transition out of x. The atom
// mass and the three branch weights sum to one by construction.
ConditionalLaw forward_conditional(double x, const LevelPair& pair);

// Samples y from the forward transition out of x (relaxing e1 -> e2). The
// atom branch copies x verbatim, so laziness is countable bit-exactly.
double relax_sample(double x, const LevelPair& pair, RandomSource& rng);

// Samples x from the backward transition out of y (tightening e2 -> e1):
// keep y with probability (e1/e2)^2, else add independent Laplace(1/e1)
// noise. Needs no access to the data the noise was applied to.
double tighten_sample(double y, const LevelPair& pair, RandomSource& rng);

// Mass of the point-mass component of the backward transition, (e1/e2)^2.
double backward_atom_mass(const LevelPair& pair);

}  // namespace graddp

#endif  // GRADDP_LAWS_HPP_
