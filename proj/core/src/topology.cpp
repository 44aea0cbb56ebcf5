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

#include "qdt/topology.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace qdt {

namespace {

std::map<int, std::vector<int>> adjacency_of(const EdgeSet& edges) {
  std::map<int, std::vector<int>> adj;
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& [id, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

std::vector<int> node_ids_of(const EdgeSet& edges) {
  std::set<int> ids;
  for (const auto& [a, b] : edges) {
    ids.insert(a);
    ids.insert(b);
  }
  return {ids.begin(), ids.end()};
}

}  // namespace

Edge make_edge(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

CouplingGraph::CouplingGraph(std::vector<int> nodes, EdgeSet edges,
                             std::map<int, int> dims)
    : nodes_(std::move(nodes)), dims_(std::move(dims)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (nodes_.empty()) throw ValidationError("coupling graph has no nodes");
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
    throw ValidationError("duplicate node id in coupling graph");
  for (int id : nodes_) {
    if (id <= 0) throw ValidationError("node ids must be positive integers");
  }

  std::set<Edge> seen;
  for (const auto& [a, b] : edges) {
    if (a == b) {
      throw ValidationError("self-loop on node " + std::to_string(a));
    }
    if (!std::binary_search(nodes_.begin(), nodes_.end(), a) ||
        !std::binary_search(nodes_.begin(), nodes_.end(), b)) {
      throw ValidationError("edge (" + std::to_string(a) + ", " +
                            std::to_string(b) + ") references an undeclared node");
    }
    auto e = make_edge(a, b);
    if (!seen.insert(e).second) {
      throw ValidationError("duplicate edge (" + std::to_string(e.first) +
                            ", " + std::to_string(e.second) + ")");
    }
  }
  edges_.assign(seen.begin(), seen.end());

  for (const auto& [id, d] : dims_) {
    if (!std::binary_search(nodes_.begin(), nodes_.end(), id))
      throw ValidationError("dimension declared for undeclared node " +
                            std::to_string(id));
    if (d < 2)
      throw ValidationError("node " + std::to_string(id) +
                            ": dimension must be at least 2, got " +
                            std::to_string(d));
  }

  adjacency_ = adjacency_of(edges_);
  for (int id : nodes_) adjacency_.try_emplace(id);
}

bool CouplingGraph::has_node(int id) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), id);
}

bool CouplingGraph::has_edge(int a, int b) const {
  return std::binary_search(edges_.begin(), edges_.end(), make_edge(a, b));
}

const std::vector<int>& CouplingGraph::neighbors(int id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end())
    throw ValidationError("unknown node " + std::to_string(id));
  return it->second;
}

std::optional<int> CouplingGraph::dim(int id) const {
  auto it = dims_.find(id);
  if (it == dims_.end()) return std::nullopt;
  return it->second;
}

int DimensionAssignment::at(int node) const {
  auto it = dims.find(node);
  if (it == dims.end())
    throw ConfigError("no dimension assigned to node " + std::to_string(node));
  return it->second;
}

EdgeSet extract_spanning_tree(const CouplingGraph& graph, int start) {
  if (!graph.has_node(start))
    throw ValidationError("start node " + std::to_string(start) +
                          " is not in the graph");

  std::set<int> visited{start};
  EdgeSet tree;
  // Iterative DFS that visits neighbors in ascending id order, matching the
  // recursive formulation without risking deep stacks on path-like graphs.
  std::vector<std::pair<int, std::size_t>> stack{{start, 0}};
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    const auto& nbrs = graph.neighbors(node);
    if (next >= nbrs.size()) {
      stack.pop_back();
      continue;
    }
    int candidate = nbrs[next++];
    if (visited.contains(candidate)) continue;
    visited.insert(candidate);
    tree.push_back(make_edge(node, candidate));
    stack.push_back({candidate, 0});
  }

  if (visited.size() != graph.node_count()) {
    for (int id : graph.nodes()) {
      if (!visited.contains(id)) {
        throw ConnectivityError("graph is not connected: node " +
                                std::to_string(id) + " is unreachable from " +
                                std::to_string(start));
      }
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

std::vector<int> find_optimal_root(const EdgeSet& tree_edges) {
  auto nodes = node_ids_of(tree_edges);
  if (nodes.empty())
    throw StructureError("empty edge set: cannot determine a root");
  if (tree_edges.size() != nodes.size() - 1)
    throw StructureError("edge set is not a tree: " +
                         std::to_string(tree_edges.size()) + " edges over " +
                         std::to_string(nodes.size()) + " nodes");

  auto adj = adjacency_of(tree_edges);
  std::map<int, int> degree;
  for (const auto& [id, nbrs] : adj) degree[id] = static_cast<int>(nbrs.size());

  std::set<int> remaining(nodes.begin(), nodes.end());
  std::deque<int> peel;
  for (const auto& [id, d] : degree)
    if (d == 1) peel.push_back(id);

  while (remaining.size() > 2) {
    if (peel.empty()) break;  // a cycle stops the peeling
    std::deque<int> next;
    for (int leaf : peel) {
      if (!remaining.contains(leaf)) continue;
      remaining.erase(leaf);
      for (int nbr : adj[leaf]) {
        if (!remaining.contains(nbr)) continue;
        if (--degree[nbr] == 1) next.push_back(nbr);
      }
    }
    peel = std::move(next);
  }

  if (remaining.size() > 2)
    throw StructureError("edge set contains a cycle: leaves-reduction left " +
                         std::to_string(remaining.size()) + " nodes");
  return {remaining.begin(), remaining.end()};
}

RootedTree build_rooted_tree(const EdgeSet& tree_edges, int root) {
  RootedTree t;
  t.root_ = root;

  auto nodes = node_ids_of(tree_edges);
  if (nodes.empty()) nodes = {root};  // single-node tree
  if (!std::binary_search(nodes.begin(), nodes.end(), root))
    throw StructureError("root " + std::to_string(root) +
                         " is not a node of the edge set");
  if (tree_edges.size() != nodes.size() - 1)
    throw StructureError("edge set is not a tree: " +
                         std::to_string(tree_edges.size()) + " edges over " +
                         std::to_string(nodes.size()) + " nodes");

  auto adj = adjacency_of(tree_edges);
  for (int id : nodes) adj.try_emplace(id);

  t.nodes_ = nodes;
  t.depth_[root] = 0;
  t.address_path_[root] = {};
  t.children_.try_emplace(root);
  t.levels_.push_back({root});

  // BFS by level; ascending ids inside a level follow from adjacency order.
  std::vector<int> frontier{root};
  std::set<int> seen{root};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int node : frontier) {
      for (int nbr : adj[node]) {
        if (seen.contains(nbr)) continue;
        seen.insert(nbr);
        t.parent_[nbr] = node;
        t.children_[node].push_back(nbr);
        t.children_.try_emplace(nbr);
        t.depth_[nbr] = t.depth_[node] + 1;
        auto path = t.address_path_[node];
        path.push_back(static_cast<int>(t.children_[node].size()));
        t.address_path_[nbr] = std::move(path);
        next.push_back(nbr);
      }
    }
    if (!next.empty()) {
      std::sort(next.begin(), next.end());
      t.levels_.push_back(next);
    }
    frontier = std::move(next);
  }

  if (seen.size() != nodes.size())
    throw StructureError("edge set is disconnected from root " +
                         std::to_string(root));

  t.edges_ = tree_edges;
  std::sort(t.edges_.begin(), t.edges_.end());
  t.height_ = static_cast<int>(t.levels_.size()) - 1;
  for (const auto& [id, ch] : t.children_)
    if (ch.size() >= 10) t.dotted_addresses_ = true;
  return t;
}

bool RootedTree::contains(int id) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), id);
}

std::optional<int> RootedTree::parent(int id) const {
  auto it = parent_.find(id);
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

const std::vector<int>& RootedTree::children(int id) const {
  auto it = children_.find(id);
  if (it == children_.end())
    throw ValidationError("node " + std::to_string(id) + " is not in the tree");
  return it->second;
}

int RootedTree::degree(int id) const {
  return static_cast<int>(children(id).size()) + (id == root_ ? 0 : 1);
}

int RootedTree::depth(int id) const {
  auto it = depth_.find(id);
  if (it == depth_.end())
    throw ValidationError("node " + std::to_string(id) + " is not in the tree");
  return it->second;
}

const std::vector<int>& RootedTree::address_path(int id) const {
  auto it = address_path_.find(id);
  if (it == address_path_.end())
    throw ValidationError("node " + std::to_string(id) + " is not in the tree");
  return it->second;
}

std::string RootedTree::address(int id) const {
  const auto& path = address_path(id);
  std::ostringstream out;
  out << 1;
  for (int component : path) {
    if (dotted_addresses_) out << '.';
    out << component;
  }
  return out.str();
}

DimensionAssignment minimal_dimensions(const RootedTree& tree,
                                       Purpose purpose) {
  DimensionAssignment out;
  out.purpose = purpose;
  for (int id : tree.nodes()) {
    int c = static_cast<int>(tree.child_count(id));
    int d;
    if (id == tree.root()) {
      d = purpose == Purpose::MultiTargetControlledUnitary ? c + 2 : c + 1;
    } else {
      d = c == 0 ? 2 : c + 2;
    }
    out.dims[id] = std::max(2, d);
  }
  return out;
}

std::vector<DimViolation> check_feasibility(const std::map<int, int>& declared,
                                            const RootedTree& tree,
                                            Purpose purpose) {
  auto required = minimal_dimensions(tree, purpose);
  std::vector<DimViolation> violations;
  for (int id : tree.nodes()) {
    auto it = declared.find(id);
    if (it == declared.end())
      throw ConfigError("node " + std::to_string(id) +
                        " has no declared dimension");
    int need = required.dims.at(id);
    if (it->second < need)
      violations.push_back({id, it->second, need});
  }
  return violations;
}

std::vector<DimViolation> check_feasibility(const CouplingGraph& graph,
                                            const RootedTree& tree,
                                            Purpose purpose) {
  for (const auto& [a, b] : tree.edges()) {
    if (!graph.has_edge(a, b))
      throw ValidationError("tree edge (" + std::to_string(a) + ", " +
                            std::to_string(b) + ") is not a graph edge");
  }
  return check_feasibility(graph.dims(), tree, purpose);
}

}  // namespace qdt
