// Copyright 2026 The quditree developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "qdt/families.hpp"
#include "qdt/topology.hpp"
#include "support/generators.hpp"

using namespace qdt;
namespace ts = qdt::testsupport;

TEST_CASE("coupling graph validation") {
  CHECK_THROWS_AS(CouplingGraph({1, 2}, {{1, 1}}), ValidationError);
  CHECK_THROWS_AS(CouplingGraph({1, 2}, {{1, 2}, {2, 1}}), ValidationError);
  CHECK_THROWS_AS(CouplingGraph({1, 2}, {{1, 3}}), ValidationError);
  CHECK_THROWS_AS(CouplingGraph({1, 2}, {{1, 2}}, {{1, 1}}), ValidationError);
  CHECK_THROWS_AS(CouplingGraph({1, 1}, {}), ValidationError);
  CHECK_THROWS_AS(CouplingGraph({0, 1}, {}), ValidationError);

  CouplingGraph g({3, 1, 2}, {{2, 1}, {3, 2}}, {{1, 2}, {2, 3}, {3, 2}});
  CHECK(g.node_count() == 3);
  CHECK(g.nodes() == std::vector<int>{1, 2, 3});
  CHECK(g.neighbors(2) == std::vector<int>{1, 3});
  CHECK(g.dim(2) == 3);
  CHECK(g.fully_dimensioned());
}

TEST_CASE("spanning tree of a triangle keeps the DFS edges") {
  CouplingGraph g({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}});
  auto tree = extract_spanning_tree(g, 1);
  CHECK(tree == EdgeSet{{1, 2}, {2, 3}});
  CHECK(ts::is_spanning_tree(g, tree));

  // Deterministic: same call, same result.
  CHECK(extract_spanning_tree(g, 1) == tree);
}

TEST_CASE("spanning tree of a path is the path itself") {
  CouplingGraph g({1, 2, 3}, {{1, 2}, {2, 3}});
  CHECK(extract_spanning_tree(g, 1) == EdgeSet{{1, 2}, {2, 3}});
}

TEST_CASE("spanning tree of a single node is empty") {
  CouplingGraph g({1}, {});
  CHECK(extract_spanning_tree(g, 1).empty());
}

TEST_CASE("disconnected graph names an unreachable node") {
  CouplingGraph g({1, 2, 3, 4}, {{1, 2}, {3, 4}});
  CHECK_THROWS_WITH_AS(extract_spanning_tree(g, 1),
                       doctest::Contains("node 3"), ConnectivityError);
}

TEST_CASE("spanning trees of random connected graphs are spanning trees") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> size(2, 200);
    int n = size(rng);
    auto g = ts::random_connected_graph(n, n / 2, rng);
    auto tree = extract_spanning_tree(g, 1);
    CHECK(ts::is_spanning_tree(g, tree));
  }
}

TEST_CASE("centers of small paths") {
  CHECK(find_optimal_root({{1, 2}, {2, 3}, {3, 4}, {4, 5}}) ==
        std::vector<int>{3});
  CHECK(find_optimal_root({{1, 2}, {2, 3}, {3, 4}}) == std::vector<int>{2, 3});
  CHECK(find_optimal_root({{1, 2}}) == std::vector<int>{1, 2});
}

TEST_CASE("centers match the brute-force minimum-height roots") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> size(2, 64);
    auto edges = ts::random_tree_edges(size(rng), rng);
    auto centers = find_optimal_root(edges);
    auto expected = ts::brute_force_centers(edges);
    std::sort(expected.begin(), expected.end());
    CHECK(centers == expected);
  }
}

TEST_CASE("center finding rejects non-trees") {
  CHECK_THROWS_AS(find_optimal_root({{1, 2}, {2, 3}, {1, 3}}), StructureError);
  // Right edge count but cyclic + disconnected.
  CHECK_THROWS_AS(find_optimal_root({{1, 2}, {3, 4}, {4, 5}, {3, 5}}),
                  StructureError);
}

TEST_CASE("rooted tree basics and addresses") {
  auto t = build_rooted_tree({{1, 2}, {1, 3}}, 1);
  CHECK(t.children(1) == std::vector<int>{2, 3});
  CHECK(t.address(1) == "1");
  CHECK(t.address(2) == "11");
  CHECK(t.address(3) == "12");
  CHECK(t.height() == 1);
  CHECK(t.parent(2) == 1);
  CHECK(!t.parent(1).has_value());

  auto path = build_rooted_tree({{1, 2}, {2, 3}}, 2);
  CHECK(path.height() == 1);
  CHECK(path.children(2) == std::vector<int>{1, 3});

  CHECK_THROWS_AS(build_rooted_tree({{1, 2}}, 7), StructureError);
  CHECK_THROWS_AS(build_rooted_tree({{1, 2}, {3, 4}}, 1), StructureError);
}

TEST_CASE("eight-node tree addresses agree with an independent traversal") {
  // Two levels below the root with mixed fanout.
  EdgeSet edges{{1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 6}, {6, 7}, {6, 8}};
  auto t = build_rooted_tree(edges, 1);

  // Recompute addresses by walking parent links, independently of the
  // implementation's stored paths.
  std::map<int, std::string> expected;
  for (int node : t.nodes()) {
    std::string addr;
    int cur = node;
    while (auto p = t.parent(cur)) {
      const auto& sib = t.children(*p);
      auto pos = std::find(sib.begin(), sib.end(), cur) - sib.begin();
      addr = std::to_string(pos + 1) + addr;
      cur = *p;
    }
    expected[node] = "1" + addr;
  }
  for (int node : t.nodes()) CHECK(t.address(node) == expected[node]);
  CHECK(t.address(8) == "122");
  CHECK(t.height() == 3);
}

TEST_CASE("address map is injective and parents own the prefix") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> size(2, 48);
    auto edges = ts::random_tree_edges(size(rng), rng);
    auto t = build_rooted_tree(edges, find_optimal_root(edges).front());
    std::set<std::string> seen;
    for (int node : t.nodes()) {
      CHECK(seen.insert(t.address(node)).second);
      if (auto p = t.parent(node)) {
        auto path = t.address_path(node);
        path.pop_back();
        CHECK(t.address_path(*p) == path);
      }
    }
  }
}

TEST_CASE("wide trees switch to dotted labels and stay injective") {
  auto star = families::star(16);
  auto t = build_rooted_tree(extract_spanning_tree(star, 1), 1);
  CHECK(t.address(2) == "1.1");
  CHECK(t.address(12) == "1.11");
  std::set<std::string> seen;
  for (int node : t.nodes()) CHECK(seen.insert(t.address(node)).second);
}

TEST_CASE("minimal dimensions: line uses qutrits inside, qubits at the ends") {
  auto g = families::line(5);
  auto t = build_rooted_tree(extract_spanning_tree(g, 1),
                             find_optimal_root(extract_spanning_tree(g, 1)).front());
  auto dims = minimal_dimensions(t, Purpose::ControlledPhaseFamily);
  CHECK(dims.dims.at(1) == 2);
  CHECK(dims.dims.at(5) == 2);
  CHECK(dims.dims.at(2) == 3);
  CHECK(dims.dims.at(3) == 3);
  CHECK(dims.dims.at(4) == 3);
}

TEST_CASE("minimal dimensions: degree-3 node needs a ququart") {
  // Brick-wall-derived tree: node 2 keeps three tree links.
  EdgeSet edges{{1, 2}, {2, 3}, {2, 4}};
  auto t = build_rooted_tree(edges, 2);
  auto dims = minimal_dimensions(t, Purpose::ControlledPhaseFamily);
  CHECK(dims.dims.at(2) == 4);

  auto honeycomb = families::honeycomb_patch(3, 4);
  auto tree = extract_spanning_tree(honeycomb, 1);
  auto root = find_optimal_root(tree).front();
  auto ht = build_rooted_tree(tree, root);
  auto hdims = minimal_dimensions(ht, Purpose::ControlledPhaseFamily);
  for (const auto& [node, d] : hdims.dims) CHECK(d <= 4);
}

TEST_CASE("minimal dimensions: star root consumes one level per child") {
  const int n = 9;
  auto g = families::star(n);
  auto t = build_rooted_tree(extract_spanning_tree(g, 1), 1);
  auto phase = minimal_dimensions(t, Purpose::ControlledPhaseFamily);
  CHECK(phase.dims.at(1) == n);  // n-1 children -> dimension n
  auto multi = minimal_dimensions(t, Purpose::MultiTargetControlledUnitary);
  CHECK(multi.dims.at(1) == n + 1);
  for (int leaf = 2; leaf <= n; ++leaf) CHECK(phase.dims.at(leaf) == 2);
}

TEST_CASE("minimal dimensions equal degree + 1 for the phase family") {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> size(2, 40);
    auto edges = ts::random_tree_edges(size(rng), rng);
    auto t = build_rooted_tree(edges, find_optimal_root(edges).front());
    auto dims = minimal_dimensions(t, Purpose::ControlledPhaseFamily);
    for (int node : t.nodes())
      CHECK(dims.dims.at(node) == std::max(2, t.degree(node) + 1));
  }
}

TEST_CASE("feasibility on a three-qudit line") {
  auto t = build_rooted_tree({{1, 2}, {2, 3}}, 2);
  CHECK(check_feasibility({{1, 2}, {2, 3}, {3, 2}}, t,
                          Purpose::ControlledPhaseFamily)
            .empty());

  auto violations = check_feasibility({{1, 2}, {2, 2}, {3, 2}}, t,
                                      Purpose::ControlledPhaseFamily);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0] == DimViolation{2, 2, 3});

  CHECK_THROWS_AS(
      check_feasibility({{1, 2}, {3, 2}}, t, Purpose::ControlledPhaseFamily),
      ConfigError);
}

TEST_CASE("feasibility is judged on tree degrees, not graph degrees") {
  // Node 2 has four graph links but only two survive in the tree, so
  // dimension 3 is enough even though graph degree + 1 would demand 5.
  CouplingGraph g({1, 2, 3, 4, 5},
                  {{1, 2}, {2, 3}, {2, 4}, {2, 5}, {4, 5}, {3, 4}},
                  {{1, 2}, {2, 3}, {3, 3}, {4, 3}, {5, 2}});
  EdgeSet tree{{1, 2}, {2, 3}, {3, 4}, {4, 5}};
  auto t = build_rooted_tree(tree, 3);
  CHECK(check_feasibility(g, t, Purpose::ControlledPhaseFamily).empty());
}

TEST_CASE("a feasible assignment stays feasible on subtrees") {
  std::mt19937 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> size(3, 32);
    auto edges = ts::random_tree_edges(size(rng), rng);
    int root = find_optimal_root(edges).front();
    auto t = build_rooted_tree(edges, root);
    auto dims = minimal_dimensions(t, Purpose::ControlledPhaseFamily);

    // Drop one leaf (not the root) and re-check with the same dimensions.
    int leaf = -1;
    for (int node : t.nodes())
      if (node != root && t.is_leaf(node)) leaf = node;
    REQUIRE(leaf > 0);
    EdgeSet sub;
    for (const auto& [a, b] : edges)
      if (a != leaf && b != leaf) sub.push_back({a, b});
    auto st = build_rooted_tree(sub, root);
    CHECK(check_feasibility(dims.dims, st, Purpose::ControlledPhaseFamily)
              .empty());
  }
}

TEST_CASE("family generators stay connected and sized as declared") {
  std::mt19937 rng(16);
  auto check_family = [&](const CouplingGraph& g) {
    auto tree = extract_spanning_tree(g, g.nodes().front());
    CHECK(tree.size() == g.node_count() - 1);
  };
  check_family(families::line(7));
  check_family(families::ring(6));
  check_family(families::star(9));
  check_family(families::grid(3, 4));
  check_family(families::honeycomb_patch(3, 5));
  check_family(families::complete_kary_tree(2, 3));
  CHECK(families::complete_kary_tree(2, 3).node_count() == 15);
  CHECK(families::kary_tree_with_nodes(3, 11).node_count() == 11);

  // Honeycomb max degree is 3.
  auto h = families::honeycomb_patch(4, 6);
  for (int node : h.nodes()) CHECK(h.neighbors(node).size() <= 3);

  CHECK(families::parse_family("line(5)").node_count() == 5);
  CHECK(families::parse_family("grid(3,3)").node_count() == 9);
  CHECK(families::parse_family("complete_kary_tree(2, 2)").node_count() == 7);
  CHECK_THROWS_AS(families::parse_family("blob(3)"), ParseError);
  CHECK_THROWS_AS(families::parse_family("line"), ParseError);
  CHECK_THROWS_AS(families::parse_family("grid(3)"), ParseError);
}
