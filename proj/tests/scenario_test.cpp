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

#include <bit>
#include <cmath>
#include <stdexcept>

#include <doctest.h>

using namespace graddp;

namespace {

bool bit_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

const NodeRelease* find_node(const ScenarioResult& result, std::size_t node) {
  for (const NodeRelease& r : result.per_node)
    if (r.node == node) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("edge list parsing skips comments and rejects junk") {
  const auto edges = parse_edge_list("# a path\n0 1\n\n  1 2\n2 3\n");
  REQUIRE(edges.size() == 3);
  CHECK(edges[0] == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(edges[2] == std::pair<std::size_t, std::size_t>{2, 3});
  CHECK_THROWS_AS(parse_edge_list("0 1 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_edge_list("0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_edge_list("a b\n"), std::invalid_argument);
}

TEST_CASE("breadth-first distances on a path with an isolated node") {
  const std::vector<std::pair<std::size_t, std::size_t>> edges = {
      {0, 1}, {1, 2}, {2, 3}};
  const auto dist = bfs_distances(5, edges, 0);
  CHECK(*dist[0] == 0);
  CHECK(*dist[1] == 1);
  CHECK(*dist[2] == 2);
  CHECK(*dist[3] == 3);
  CHECK_FALSE(dist[4].has_value());
  CHECK_THROWS_AS(bfs_distances(2, edges, 0), std::invalid_argument);
  CHECK_THROWS_AS(bfs_distances(5, edges, 9), std::invalid_argument);
}

TEST_CASE("path-graph scenario assigns eps = 1/distance") {
  SocialGraph graph;
  graph.node_count = 4;
  graph.edges = {{0, 1}, {1, 2}, {2, 3}};
  graph.owner = 0;
  graph.data = PrivateVector({2.5});

  const ScenarioResult result = run_social_scenario(graph, 1.0, 7, {2, 3});
  REQUIRE(result.per_node.size() == 3);  // owner excluded
  CHECK(find_node(result, 0) == nullptr);
  CHECK(*find_node(result, 1)->eps == 1.0);
  CHECK(*find_node(result, 2)->eps == 0.5);
  CHECK(*find_node(result, 3)->eps == doctest::Approx(1.0 / 3.0));
  CHECK(result.collusion_bound == 1.0);
  REQUIRE(result.subset_bound.has_value());
  CHECK(*result.subset_bound == 0.5);  // best of nodes {2, 3}

  // Emission order: nearest (largest eps) first.
  CHECK(result.per_node[0].node == 1);
  CHECK(result.per_node[1].node == 2);
  CHECK(result.per_node[2].node == 3);
}

TEST_CASE("nodes at one distance share a single response") {
  SocialGraph graph;
  graph.node_count = 5;
  graph.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};  // star, owner center
  graph.owner = 0;
  graph.data = PrivateVector({1.0, -2.0});

  const ScenarioResult result = run_social_scenario(graph, 1.0, 11);
  REQUIRE(result.per_node.size() == 4);
  for (const NodeRelease& r : result.per_node) {
    CHECK(*r.distance == 1);
    CHECK(bit_equal(r.values[0], result.per_node[0].values[0]));
    CHECK(bit_equal(r.values[1], result.per_node[0].values[1]));
  }
}

TEST_CASE("unreachable nodes are reported without a response") {
  SocialGraph graph;
  graph.node_count = 4;
  graph.edges = {{0, 1}};
  graph.owner = 0;
  graph.data = PrivateVector({0.0});

  const ScenarioResult result = run_social_scenario(graph, 1.0, 3);
  const NodeRelease* isolated = find_node(result, 2);
  REQUIRE(isolated != nullptr);
  CHECK_FALSE(isolated->distance.has_value());
  CHECK_FALSE(isolated->eps.has_value());
  CHECK(isolated->values.empty());
  CHECK(result.collusion_bound == 1.0);
}

TEST_CASE("scenario runs are deterministic per seed") {
  SocialGraph graph;
  graph.node_count = 4;
  graph.edges = {{0, 1}, {1, 2}, {2, 3}};
  graph.owner = 0;
  graph.data = PrivateVector({3.0});

  const ScenarioResult a = run_social_scenario(graph, 1.0, 21);
  const ScenarioResult b = run_social_scenario(graph, 1.0, 21);
  REQUIRE(a.per_node.size() == b.per_node.size());
  for (std::size_t i = 0; i < a.per_node.size(); ++i)
    CHECK(bit_equal(a.per_node[i].values[0], b.per_node[i].values[0]));

  const ScenarioResult c = run_social_scenario(graph, 1.0, 22);
  CHECK_FALSE(bit_equal(a.per_node[0].values[0], c.per_node[0].values[0]));
}

TEST_CASE("responses across distances stay on one coupled chain") {
  // Over repeated scenario runs, the distance-1 and distance-2 responses
  // coincide with the frequency of the backward keep mass (1/2)^2.
  SocialGraph graph;
  graph.node_count = 3;
  graph.edges = {{0, 1}, {1, 2}};
  graph.owner = 0;
  graph.data = PrivateVector({4.2});

  const std::size_t runs = 100000;
  std::size_t equal = 0;
  for (std::size_t s = 0; s < runs; ++s) {
    const ScenarioResult result = run_social_scenario(graph, 1.0, s);
    equal += bit_equal(result.per_node[0].values[0],
                       result.per_node[1].values[0]);
  }
  const double fraction = static_cast<double>(equal) /
                          static_cast<double>(runs);
  CHECK(std::abs(fraction - 0.25) < 0.02);
}
