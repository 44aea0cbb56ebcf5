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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdt/errors.hpp"

namespace qdt {

/// Unordered edge between two node ids, stored as (min, max).
using Edge = std::pair<int, int>;
using EdgeSet = std::vector<Edge>;

Edge make_edge(int a, int b);

/// Device connectivity: a set of qudit nodes with optional per-node
/// dimensions and an undirected edge set. Self-loops and duplicate edges are
/// rejected at construction; connectivity is checked by the operations that
/// need it, so a disconnected graph is representable (and reported with a
/// useful error when a spanning tree is requested).
class CouplingGraph {
 public:
  CouplingGraph(std::vector<int> nodes, EdgeSet edges,
                std::map<int, int> dims = {});

  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<int>& nodes() const { return nodes_; }
  const EdgeSet& edges() const { return edges_; }
  bool has_node(int id) const;
  bool has_edge(int a, int b) const;

  /// Neighbors in ascending id order.
  const std::vector<int>& neighbors(int id) const;

  const std::map<int, int>& dims() const { return dims_; }
  std::optional<int> dim(int id) const;
  bool fully_dimensioned() const { return dims_.size() == nodes_.size(); }

 private:
  std::vector<int> nodes_;  // sorted ascending
  EdgeSet edges_;           // canonical, sorted
  std::map<int, int> dims_;
  std::map<int, std::vector<int>> adjacency_;
};

/// A spanning tree rooted at a chosen node. Children are ordered by
/// ascending node id and every node carries a positional label: the root is
/// "1" and the i-th child of a node labeled s is labeled s followed by i.
/// When some node has ten or more children the label components are joined
/// with '.' instead of plain concatenation, which keeps labels unambiguous.
class RootedTree {
 public:
  /// Empty until assigned from build_rooted_tree.
  RootedTree() = default;

  int root() const { return root_; }
  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<int>& nodes() const { return nodes_; }  // ascending ids
  bool contains(int id) const;

  std::optional<int> parent(int id) const;
  const std::vector<int>& children(int id) const;
  std::size_t child_count(int id) const { return children(id).size(); }
  bool is_leaf(int id) const { return children(id).empty(); }

  /// Edges of the tree in canonical order.
  const EdgeSet& edges() const { return edges_; }

  /// Degree of the node inside the tree (parent link plus children).
  int degree(int id) const;

  /// Number of edges from the root down to the node.
  int depth(int id) const;
  /// Number of edges from the root to the farthest node.
  int height() const { return height_; }

  /// Positional label, e.g. "1", "11", "12", "121".
  std::string address(int id) const;
  /// Child indices along the path from the root (empty for the root).
  const std::vector<int>& address_path(int id) const;

  /// Nodes grouped by depth, each level in ascending id order.
  const std::vector<std::vector<int>>& levels() const { return levels_; }

  friend RootedTree build_rooted_tree(const EdgeSet& tree_edges, int root);

 private:
  int root_ = 0;
  std::vector<int> nodes_;
  EdgeSet edges_;
  std::map<int, int> parent_;
  std::map<int, std::vector<int>> children_;
  std::map<int, std::vector<int>> address_path_;
  std::map<int, int> depth_;
  std::vector<std::vector<int>> levels_;
  int height_ = 0;
  bool dotted_addresses_ = false;
};

/// What the dimension assignment has to support.
enum class Purpose {
  ControlledPhaseFamily,        // multi-controlled Z / Z_theta / Toffoli
  MultiTargetControlledUnitary  // controlled block on extra target qudits
};

/// Per-node qudit dimensions together with the purpose they were computed
/// for. Every node satisfies d >= degree + 1; for the multi-target purpose
/// the root additionally satisfies d_root >= children + 2.
struct DimensionAssignment {
  std::map<int, int> dims;
  Purpose purpose = Purpose::ControlledPhaseFamily;

  int at(int node) const;
};

/// Keeps every edge explored by a depth-first search from `start` and drops
/// the unexplored ones. Neighbors are visited in ascending node id order, so
/// the result is deterministic. Throws ConnectivityError when some node
/// cannot be reached.
EdgeSet extract_spanning_tree(const CouplingGraph& graph, int start);

/// Tree centers: iteratively peels degree-1 nodes until one or two nodes
/// remain. Rooting the tree at any returned node minimizes its height.
/// Returns one or two ids in ascending order. Linear in the node count.
std::vector<int> find_optimal_root(const EdgeSet& tree_edges);

/// Builds parent/children maps and positional labels for the tree rooted at
/// `root`. Throws StructureError when the edges do not form a tree that
/// contains `root`.
RootedTree build_rooted_tree(const EdgeSet& tree_edges, int root);

/// Smallest per-node dimensions the synthesizer needs on this tree: leaves
/// get 2, a non-root node with c children gets c + 2, the root gets
/// children + 1 (phase family) or children + 2 (multi-target).
DimensionAssignment minimal_dimensions(const RootedTree& tree, Purpose purpose);

/// Compares declared dimensions against minimal_dimensions pointwise.
/// Returns an empty list when every node is large enough. Throws ConfigError
/// when a tree node has no declared dimension.
std::vector<DimViolation> check_feasibility(const std::map<int, int>& declared,
                                            const RootedTree& tree,
                                            Purpose purpose);
std::vector<DimViolation> check_feasibility(const CouplingGraph& graph,
                                            const RootedTree& tree,
                                            Purpose purpose);

}  // namespace qdt
