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

#include "graddp/scenario.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace graddp {

std::vector<std::pair<std::size_t, std::size_t>> parse_edge_list(
    const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    long long u = -1, v = -1;
    std::string extra;
    if (!(fields >> u >> v) || u < 0 || v < 0 || (fields >> extra))
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  " is not a 'u v' pair: '" + line + "'");
    edges.emplace_back(static_cast<std::size_t>(u),
                       static_cast<std::size_t>(v));
  }
  return edges;
}

std::vector<std::optional<std::size_t>> bfs_distances(
    std::size_t node_count,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges,
    std::size_t source) {
  if (source >= node_count)
    throw std::invalid_argument("source node out of range");
  std::vector<std::vector<std::size_t>> adjacency(node_count);
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count)
      throw std::invalid_argument("edge references a node out of range");
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }
  std::vector<std::optional<std::size_t>> dist(node_count);
  std::deque<std::size_t> frontier{source};
  dist[source] = 0;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop_front();
    for (std::size_t v : adjacency[u])
      if (!dist[v]) {
        dist[v] = *dist[u] + 1;
        frontier.push_back(v);
      }
  }
  return dist;
}

ScenarioResult run_social_scenario(const SocialGraph& graph, double alpha,
                                   std::uint64_t seed,
                                   const std::vector<std::size_t>& subset) {
  const auto dist =
      bfs_distances(graph.node_count, graph.edges, graph.owner);
  for (std::size_t node : subset)
    if (node >= graph.node_count)
      throw std::invalid_argument("subset node out of range");

  // Group nodes by distance; each distance gets one level eps = 1/d shared
  // by all its nodes.
  std::map<std::size_t, std::vector<std::size_t>> by_distance;
  for (std::size_t node = 0; node < graph.node_count; ++node)
    if (node != graph.owner && dist[node]) by_distance[*dist[node]].push_back(node);

  MechanismState state(graph.data, alpha, seed);
  const std::set<std::size_t> chosen(subset.begin(), subset.end());

  ScenarioResult result;
  double subset_max = 0.0;
  bool subset_hit = false;
  // Nearest nodes carry the loosest level; releasing that one first and
  // tightening downward keeps every response on the single shared chain.
  for (const auto& [d, nodes] : by_distance) {
    const double eps = 1.0 / static_cast<double>(d);
    const Response response = state.release(PrivacyLevel(eps));
    result.collusion_bound = std::max(result.collusion_bound, eps);
    for (std::size_t node : nodes) {
      result.per_node.push_back({node, d, eps, response.values});
      if (chosen.count(node)) {
        subset_max = std::max(subset_max, eps);
        subset_hit = true;
      }
    }
  }
  for (std::size_t node = 0; node < graph.node_count; ++node)
    if (node != graph.owner && !dist[node])
      result.per_node.push_back({node, std::nullopt, std::nullopt, {}});

  if (!subset.empty() && subset_hit) result.subset_bound = subset_max;
  return result;
}

}  // namespace graddp
