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

#include "graddp/laws.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace graddp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool bit_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

void require_finite(double x, const char* name) {
  if (!std::isfinite(x))
    throw std::domain_error(std::string(name) + " must be finite");
}

}  // namespace

PrivacyLevel::PrivacyLevel(double value) : value_(value) {
  if (!(std::isfinite(value) && value > 0.0))
    throw std::invalid_argument("privacy level must be positive and finite");
}

LevelPair::LevelPair(PrivacyLevel eps1, PrivacyLevel eps2)
    : eps1_(eps1), eps2_(eps2) {
  if (eps1.value() > eps2.value())
    throw std::invalid_argument("level pair requires eps1 <= eps2");
}

double laplace_log_pdf(double x, PrivacyLevel eps) {
  require_finite(x, "x");
  return std::log(eps.value() / 2.0) - eps.value() * std::abs(x);
}

double laplace_pdf(double x, PrivacyLevel eps) {
  return std::exp(laplace_log_pdf(x, eps));
}

double laplace_cdf(double x, PrivacyLevel eps) {
  require_finite(x, "x");
  if (x < 0.0) return 0.5 * std::exp(eps.value() * x);
  return 1.0 - 0.5 * std::exp(-eps.value() * x);
}

double laplace_sample(PrivacyLevel eps, RandomSource& rng) {
  const double u = rng.uniform_open();
  if (u < 0.5) return std::log(2.0 * u) / eps.value();
  return -std::log(2.0 * (1.0 - u)) / eps.value();
}

JointLogDensityValue joint_log_pdf(double x, double y, const LevelPair& pair) {
  require_finite(x, "x");
  require_finite(y, "y");
  const double e1 = pair.eps1().value();
  const double e2 = pair.eps2().value();
  JointLogDensityValue value;
  value.log_diagonal_coefficient =
      bit_equal(x, y) ? std::log(e1 * e1 / (2.0 * e2)) - e2 * std::abs(y)
                      : kNegInf;
  // Coefficient vanishes for e1 == e2; log(0) = -inf is the intended value.
  value.log_continuous_density =
      std::log(e1 * (e2 * e2 - e1 * e1) / (4.0 * e2)) - e1 * std::abs(x - y) -
      e2 * std::abs(y);
  return value;
}

JointDensityValue joint_pdf(double x, double y, const LevelPair& pair) {
  const JointLogDensityValue logs = joint_log_pdf(x, y, pair);
  return JointDensityValue{std::exp(logs.log_diagonal_coefficient),
                           std::exp(logs.log_continuous_density)};
}

double forward_atom_log_mass(double x, const LevelPair& pair) {
  require_finite(x, "x");
  const double e1 = pair.eps1().value();
  const double e2 = pair.eps2().value();
  return std::log(e1 / e2) - (e2 - e1) * std::abs(x);
}

double forward_atom_mass(double x, const LevelPair& pair) {
  return std::exp(forward_atom_log_mass(x, pair));
}

double forward_conditional_continuous_log_pdf(double y, double x,
                                              const LevelPair& pair) {
  require_finite(x, "x");
  require_finite(y, "y");
  const double e1 = pair.eps1().value();
  const double e2 = pair.eps2().value();
  return std::log((e2 * e2 - e1 * e1) / (2.0 * e2)) - e1 * std::abs(y - x) -
         e2 * std::abs(y) + e1 * std::abs(x);
}

double forward_conditional_continuous_pdf(double y, double x,
                                          const LevelPair& pair) {
  return std::exp(forward_conditional_continuous_log_pdf(y, x, pair));
}

ConditionalLaw forward_conditional(double x, const LevelPair& pair) {
  require_finite(x, "x");
  const double e1 = pair.eps1().value();
  const double e2 = pair.eps2().value();
  const double gap = e2 - e1;
  const double ax = std::abs(x);
  const double keep = std::exp(-gap * ax);       // exp(-(e2-e1)|x|)
  const double lose = -std::expm1(-gap * ax);    // 1 - keep, no cancellation

  ConditionalLaw law;
  law.atom_location = x;
  law.source_noise = x;
  law.eps1 = e1;
  law.eps2 = e2;
  law.atom_mass = (e1 / e2) * keep;
  law.branch_weights = {gap / (2.0 * e2),                 // z <= 0
                        (e1 + e2) / (2.0 * e2) * lose,    // 0 <= z <= |x|
                        gap / (2.0 * e2) * keep};         // z >= |x|
  return law;
}

double relax_sample(double x, const LevelPair& pair, RandomSource& rng) {
  require_finite(x, "x");
  const double e1 = pair.eps1().value();
  const double e2 = pair.eps2().value();
  // Equal levels collapse to a point mass at x; the interior branch below
  // would otherwise divide by the zero gap.
  if (e1 == e2) return x;
  // Levels past the threshold release the exact value: point mass at zero.
  if (e2 >= kInfiniteLevelThreshold) return 0.0;

  const ConditionalLaw law = forward_conditional(x, pair);
  double u = rng.uniform_open();
  if (u < law.atom_mass) return x;  // verbatim copy, countable bit-exactly
  u -= law.atom_mass;

  const double sum = e1 + e2;
  const double gap = e2 - e1;
  const double ax = std::abs(x);
  const double sign = (x == 0.0) ? rng.sign() : std::copysign(1.0, x);

  if (u < law.branch_weights[0]) {
    // z <= 0 with density proportional to exp((e1+e2) z).
    const double z = std::log(rng.uniform_positive()) / sum;
    return sign * z;
  }
  u -= law.branch_weights[0];
  if (u < law.branch_weights[1]) {
    // z in [0, |x|] with density proportional to exp(-(e2-e1) z). The
    // variate stays strictly below 1: at v = 1 with expm1(-gap|x|) == -1
    // (gap|x| past ~745) the inversion would hit log1p(-1) = -inf.
    const double v = rng.uniform_open();
    const double z = -std::log1p(v * std::expm1(-gap * ax)) / gap;
    return sign * z;
  }
  // z >= |x| with density proportional to exp(-(e1+e2) z).
  const double z = ax - std::log(rng.uniform_positive()) / sum;
  return sign * z;
}

double backward_atom_mass(const LevelPair& pair) {
  const double ratio = pair.eps1().value() / pair.eps2().value();
  return ratio * ratio;
}

double tighten_sample(double y, const LevelPair& pair, RandomSource& rng) {
  require_finite(y, "y");
  if (pair.eps1() == pair.eps2()) return y;
  const double u = rng.uniform_open();
  if (u < backward_atom_mass(pair)) return y;  // verbatim copy
  return y + laplace_sample(pair.eps1(), rng);
}

}  // namespace graddp
