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

#ifndef GRADDP_SCENARIO_HPP_
#define GRADDP_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graddp/mechanism.hpp"

namespace graddp {

// Undirected social graph; one node owns a private vector it shares with
// the rest of the network at distance-dependent privacy levels.
struct SocialGraph {
  std::size_t node_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t owner = 0;
  PrivateVector data{std::vector<double>{0.0}};
};

struct NodeRelease {
  std::size_t node = 0;
  std::optional<std::size_t> distance;  // empty for unreachable nodes
  std::optional<double> eps;            // 1/distance when reachable
  std::vector<double> values;           // empty for unreachable nodes
};

struct ScenarioResult {
  std::vector<NodeRelease> per_node;  // ascending (distance, node)
  double collusion_bound = 0.0;       // max eps over released nodes
  std::optional<double> subset_bound;  // max eps over a chosen subset
};

// Parses a text edge list: one "u v" pair of node ids per line, blank lines
// and lines starting with '#' skipped. Node count is 1 + the largest id.
std::vector<std::pair<std::size_t, std::size_t>> parse_edge_list(
    const std::string& text);

// Unweighted shortest-path distances from `source`; unreachable nodes are
// left empty.
std::vector<std::optional<std::size_t>> bfs_distances(
    std::size_t node_count,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges,
    std::size_t source);

// Coupled release across a network. Every node at distance d from the
// owner gets the response at level eps = 1/d, all drawn from one chain per
// coordinate: levels are materialized largest-first and extended downward
// by tightening, so any colluding subset learns no more than its best
// member's level. The owner itself is excluded. Levels are
// Lipschitz-scaled by alpha as in MechanismState.
ScenarioResult run_social_scenario(
    const SocialGraph& graph, double alpha, std::uint64_t seed,
    const std::vector<std::size_t>& subset = {});

}  // namespace graddp

#endif  // GRADDP_SCENARIO_HPP_
