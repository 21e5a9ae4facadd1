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

#include "graddp/chain.hpp"

#include <bit>
#include <cmath>

#include <json.hpp>

#include "graddp/errors.hpp"
#include "graddp/hexfloat.hpp"

namespace graddp {

namespace {

constexpr int kChainFormatVersion = 1;
constexpr const char* kChainKind = "jump_chain";

bool bit_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

JumpChain::JumpChain(PrivacyLevel eps, RandomSource rng) : rng_(rng) {
  points_.push_back({eps.value(), laplace_sample(eps, rng_)});
}

double JumpChain::query(PrivacyLevel eps) {
  const double e = eps.value();
  for (const Point& p : points_)
    if (p.eps == e) return p.noise;

  const Point& lo = points_.front();
  const Point& hi = points_.back();
  if (e > hi.eps) {
    const double noise =
        relax_sample(hi.noise, LevelPair(PrivacyLevel(hi.eps), eps), rng_);
    points_.push_back({e, noise});
    return noise;
  }
  if (e < lo.eps) {
    const double noise =
        tighten_sample(lo.noise, LevelPair(eps, PrivacyLevel(lo.eps)), rng_);
    points_.insert(points_.begin(), {e, noise});
    return noise;
  }
  // Strictly interior: find the bracketing levels for the diagnostic.
  double lower = lo.eps, upper = hi.eps;
  for (const Point& p : points_) {
    if (p.eps < e) lower = p.eps;
    if (p.eps > e) {
      upper = p.eps;
      break;
    }
  }
  throw BridgeUnsupportedError(e, lower, upper);
}

void JumpChain::compact() {
  if (points_.size() < 3) return;
  std::vector<Point> kept;
  kept.push_back(points_.front());
  for (std::size_t i = 1; i + 1 < points_.size(); ++i)
    if (!bit_equal(points_[i].noise, points_[i - 1].noise))
      kept.push_back(points_[i]);
  kept.push_back(points_.back());
  points_ = std::move(kept);
}

std::string JumpChain::serialize() const {
  nlohmann::ordered_json rec;
  rec["version"] = kChainFormatVersion;
  rec["kind"] = kChainKind;
  auto levels = nlohmann::ordered_json::array();
  auto noises = nlohmann::ordered_json::array();
  for (const Point& p : points_) {
    levels.push_back(to_hex_float(p.eps));
    noises.push_back(to_hex_float(p.noise));
  }
  rec["eps_levels"] = std::move(levels);
  rec["noise_values"] = std::move(noises);
  rec["rng_state"] = rng_.state_string();
  return rec.dump();
}

JumpChain JumpChain::deserialize(const std::string& record) {
  nlohmann::json rec;
  try {
    rec = nlohmann::json::parse(record);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("jump chain record is not valid JSON: ") +
                     e.what());
  }
  try {
    if (!rec.is_object() || !rec.contains("version"))
      throw ParseError("jump chain record lacks a version field");
    if (rec.at("version").get<int>() != kChainFormatVersion)
      throw ParseError("unsupported jump chain record version");
    if (rec.value("kind", "") != kChainKind)
      throw ParseError("record kind is not 'jump_chain'");

    const auto& levels = rec.at("eps_levels");
    const auto& noises = rec.at("noise_values");
    if (!levels.is_array() || !noises.is_array() ||
        levels.size() != noises.size() || levels.empty())
      throw ParseError("jump chain record has mismatched level/noise arrays");

    JumpChain chain;
    double prev = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const double eps = from_hex_float(levels[i].get<std::string>());
      const double noise = from_hex_float(noises[i].get<std::string>());
      if (!(std::isfinite(eps) && eps > 0.0))
        throw ParseError("jump chain level is not a positive finite value");
      if (!std::isfinite(noise))
        throw ParseError("jump chain noise value is not finite");
      if (i > 0 && !(eps > prev))
        throw ParseError("jump chain levels must be strictly increasing");
      prev = eps;
      chain.points_.push_back({eps, noise});
    }
    chain.rng_ = RandomSource::from_state_string(
        rec.at("rng_state").get<std::string>());
    return chain;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed jump chain record: ") + e.what());
  }
}

}  // namespace graddp
