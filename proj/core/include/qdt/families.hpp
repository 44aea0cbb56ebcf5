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

#include <string>

#include "qdt/topology.hpp"

namespace qdt::families {

/// Nodes 1..n in a row.
CouplingGraph line(int n);
/// Line plus the closing edge (n, 1). Needs n >= 3.
CouplingGraph ring(int n);
/// Node 1 connected to nodes 2..n.
CouplingGraph star(int n);
/// w x h rectangular lattice, node ids row-major starting at 1.
CouplingGraph grid(int w, int h);
/// Brick-wall patch: rows x cols nodes with all horizontal edges and
/// alternating vertical bonds, so the maximum degree is 3.
CouplingGraph honeycomb_patch(int rows, int cols);
/// Complete k-ary tree of the given height ((k^{h+1}-1)/(k-1) nodes).
CouplingGraph complete_kary_tree(int k, int height);
/// Heap-shaped k-ary tree with exactly n nodes: node i's parent is
/// (i - 2) / k + 1. Every level but the last is full.
CouplingGraph kary_tree_with_nodes(int k, int n);

/// Parses "line(5)", "grid(3,3)", "complete_kary_tree(2,4)", ...
CouplingGraph parse_family(const std::string& spec);

}  // namespace qdt::families
