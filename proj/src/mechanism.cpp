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

#include "graddp/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "graddp/errors.hpp"
#include "graddp/hexfloat.hpp"

namespace graddp {

namespace {

constexpr int kStateFormatVersion = 1;
constexpr const char* kStateKind = "mechanism_state";

void require_alpha(double alpha) {
  if (!(std::isfinite(alpha) && alpha > 0.0))
    throw std::invalid_argument("adjacency scale alpha must be positive");
}

}  // namespace

PrivateVector::PrivateVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty())
    throw std::invalid_argument("private vector must have at least one entry");
  for (double v : values_)
    if (!std::isfinite(v))
      throw std::invalid_argument("private vector entries must be finite");
}

MechanismState::MechanismState(PrivateVector data, double alpha,
                               std::uint64_t seed)
    : data_(std::move(data)), alpha_(alpha), seed_(seed) {
  require_alpha(alpha);
}

Response MechanismState::release(PrivacyLevel eps_dp) {
  const double e_dp = eps_dp.value();
  const PrivacyLevel eps_lip(e_dp / alpha_);
  const std::size_t n = data_.size();

  const bool known = std::find(released_dp_.begin(), released_dp_.end(),
                               e_dp) != released_dp_.end();
  if (!known && !released_dp_.empty() && e_dp > released_dp_.front() &&
      e_dp < released_dp_.back()) {
    // All chains hold the same level set, so the dp-level brackets are
    // common to every coordinate.
    double lower = released_dp_.front(), upper = released_dp_.back();
    for (double r : released_dp_) {
      if (r < e_dp) lower = r;
      if (r > e_dp) {
        upper = r;
        break;
      }
    }
    throw BridgeUnsupportedError(e_dp, lower, upper);
  }

  // A distinct dp level can quotient to a lipschitz level that is already
  // sampled (adjacent doubles over the same alpha). Serve it from the
  // stored point without recording a second level, keeping released_dp_
  // and the chain points in lockstep.
  const bool alias = [&] {
    if (known || chains_.empty()) return false;
    for (const JumpChain::Point& p : chains_.front().points())
      if (p.eps == eps_lip.value()) return true;
    return false;
  }();

  if (chains_.empty()) {
    chains_.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      chains_.emplace_back(eps_lip, RandomSource::from_stream(seed_, i));
    released_dp_.push_back(e_dp);
  } else if (!known && !alias) {
    // Chains are independent; extension order across coordinates does not
    // matter and each chain owns its generator.
#pragma omp parallel for schedule(static) if (n > 1024)
    for (std::size_t i = 0; i < n; ++i) chains_[i].query(eps_lip);
    released_dp_.insert(
        std::upper_bound(released_dp_.begin(), released_dp_.end(), e_dp),
        e_dp);
  }

  Response response;
  response.eps_dp = e_dp;
  response.eps_lipschitz = eps_lip.value();
  response.values.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    response.values[i] = data_.values()[i] + chains_[i].query(eps_lip);
  return response;
}

std::string MechanismState::serialize() const {
  nlohmann::ordered_json rec;
  rec["version"] = kStateFormatVersion;
  rec["kind"] = kStateKind;
  rec["n"] = data_.size();
  rec["alpha"] = to_hex_float(alpha_);
  rec["seed"] = seed_;
  auto levels = nlohmann::ordered_json::array();
  for (double e : released_dp_) levels.push_back(to_hex_float(e));
  rec["released_levels"] = std::move(levels);
  auto data = nlohmann::ordered_json::array();
  for (double v : data_.values()) data.push_back(to_hex_float(v));
  rec["data"] = std::move(data);
  auto chains = nlohmann::ordered_json::array();
  for (const JumpChain& chain : chains_)
    chains.push_back(nlohmann::ordered_json::parse(chain.serialize()));
  rec["chains"] = std::move(chains);
  return rec.dump();
}

MechanismState MechanismState::deserialize(const std::string& record) {
  nlohmann::json rec;
  try {
    rec = nlohmann::json::parse(record);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("mechanism record is not valid JSON: ") +
                     e.what());
  }
  try {
    if (!rec.is_object() || !rec.contains("version"))
      throw ParseError("mechanism record lacks a version field");
    if (rec.at("version").get<int>() != kStateFormatVersion)
      throw ParseError("unsupported mechanism record version");
    if (rec.value("kind", "") != kStateKind)
      throw ParseError("record kind is not 'mechanism_state'");

    std::vector<double> data;
    for (const auto& v : rec.at("data"))
      data.push_back(from_hex_float(v.get<std::string>()));
    if (data.size() != rec.at("n").get<std::size_t>())
      throw ParseError("mechanism record n does not match data length");

    MechanismState state(PrivateVector(std::move(data)),
                         from_hex_float(rec.at("alpha").get<std::string>()),
                         rec.at("seed").get<std::uint64_t>());

    for (const auto& e : rec.at("released_levels")) {
      const double level = from_hex_float(e.get<std::string>());
      if (!state.released_dp_.empty() && level <= state.released_dp_.back())
        throw ParseError("released levels must be strictly increasing");
      state.released_dp_.push_back(level);
    }

    for (const auto& chain : rec.at("chains"))
      state.chains_.push_back(JumpChain::deserialize(chain.dump()));
    if (!state.chains_.empty()) {
      if (state.chains_.size() != state.size())
        throw ParseError("mechanism record chain count does not match n");
      for (const JumpChain& chain : state.chains_) {
        if (chain.points().size() != state.released_dp_.size())
          throw ParseError("chain levels do not match released levels");
        for (std::size_t k = 0; k < state.released_dp_.size(); ++k)
          if (chain.points()[k].eps !=
              state.released_dp_[k] / state.alpha_)
            throw ParseError("chain levels do not match released levels");
      }
    } else if (!state.released_dp_.empty()) {
      throw ParseError("released levels present but no chains stored");
    }
    return state;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed mechanism record: ") + e.what());
  }
}

Response tighten_for_third_party(const Response& response,
                                 PrivacyLevel eps_dp_lower, double alpha,
                                 RandomSource& rng) {
  require_alpha(alpha);
  if (eps_dp_lower.value() > response.eps_dp)
    throw std::invalid_argument(
        "tightening requires a level at or below the response level");
  const LevelPair pair(PrivacyLevel(eps_dp_lower.value() / alpha),
                       PrivacyLevel(response.eps_dp / alpha));
  Response tightened;
  tightened.eps_dp = eps_dp_lower.value();
  tightened.eps_lipschitz = eps_dp_lower.value() / alpha;
  tightened.values.reserve(response.values.size());
  for (double y : response.values)
    tightened.values.push_back(tighten_sample(y, pair, rng));
  return tightened;
}

std::pair<Response, Response> naive_composition_release(
    const PrivateVector& data, PrivacyLevel eps1_dp, PrivacyLevel eps2_dp,
    double alpha, std::uint64_t seed) {
  require_alpha(alpha);
  if (!(eps2_dp.value() > eps1_dp.value()))
    throw std::invalid_argument("naive composition requires eps2 > eps1");
  const PrivacyLevel first_lip(eps1_dp.value() / alpha);
  // Summed budgets leave only the gap for the second response.
  const double gap_dp = eps2_dp.value() - eps1_dp.value();
  const PrivacyLevel second_lip(gap_dp / alpha);

  RandomSource rng1 = RandomSource::from_stream(seed, 1);
  RandomSource rng2 = RandomSource::from_stream(seed, 2);
  Response first{eps1_dp.value(), first_lip.value(), {}};
  Response second{gap_dp, second_lip.value(), {}};
  for (double u : data.values()) {
    first.values.push_back(u + laplace_sample(first_lip, rng1));
    second.values.push_back(u + laplace_sample(second_lip, rng2));
  }
  return {std::move(first), std::move(second)};
}

}  // namespace graddp
