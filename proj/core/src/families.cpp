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

#include "qdt/families.hpp"

#include <numeric>
#include <regex>

namespace qdt::families {

namespace {

std::vector<int> iota_nodes(int n) {
  std::vector<int> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 1);
  return nodes;
}

void require_positive(int value, const char* what) {
  if (value <= 0)
    throw ValidationError(std::string(what) + " must be positive, got " +
                          std::to_string(value));
}

}  // namespace

CouplingGraph line(int n) {
  require_positive(n, "line length");
  EdgeSet edges;
  for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
  return CouplingGraph(iota_nodes(n), edges);
}

CouplingGraph ring(int n) {
  if (n < 3) throw ValidationError("a ring needs at least 3 nodes");
  EdgeSet edges;
  for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
  edges.push_back({1, n});
  return CouplingGraph(iota_nodes(n), edges);
}

CouplingGraph star(int n) {
  require_positive(n, "star size");
  EdgeSet edges;
  for (int i = 2; i <= n; ++i) edges.push_back({1, i});
  return CouplingGraph(iota_nodes(n), edges);
}

CouplingGraph grid(int w, int h) {
  require_positive(w, "grid width");
  require_positive(h, "grid height");
  auto id = [w](int r, int c) { return r * w + c + 1; };
  EdgeSet edges;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (c + 1 < w) edges.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < h) edges.push_back({id(r, c), id(r + 1, c)});
    }
  }
  return CouplingGraph(iota_nodes(w * h), edges);
}

CouplingGraph honeycomb_patch(int rows, int cols) {
  require_positive(rows, "honeycomb rows");
  require_positive(cols, "honeycomb cols");
  auto id = [cols](int r, int c) { return r * cols + c + 1; };
  EdgeSet edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c + 1 < cols; ++c)
      edges.push_back({id(r, c), id(r, c + 1)});
  // Alternating vertical bonds keep the maximum degree at 3.
  for (int r = 0; r + 1 < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if ((r + c) % 2 == 0) edges.push_back({id(r, c), id(r + 1, c)});
  return CouplingGraph(iota_nodes(rows * cols), edges);
}

CouplingGraph kary_tree_with_nodes(int k, int n) {
  require_positive(n, "tree size");
  if (k < 1) throw ValidationError("tree arity must be at least 1");
  EdgeSet edges;
  for (int i = 2; i <= n; ++i) edges.push_back({(i - 2) / k + 1, i});
  return CouplingGraph(iota_nodes(n), edges);
}

CouplingGraph complete_kary_tree(int k, int height) {
  if (k < 2) throw ValidationError("tree arity must be at least 2");
  if (height < 0) throw ValidationError("tree height must be >= 0");
  long long n = 0, level = 1;
  for (int h = 0; h <= height; ++h) {
    n += level;
    level *= k;
    if (n > 1'000'000) throw ValidationError("tree too large");
  }
  return kary_tree_with_nodes(k, static_cast<int>(n));
}

CouplingGraph parse_family(const std::string& spec) {
  static const std::regex pattern(R"(^\s*([a-z_]+)\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$)");
  std::smatch m;
  if (!std::regex_match(spec, m, pattern))
    throw ParseError("cannot parse family spec '" + spec +
                     "'; expected name(N) or name(a,b)");
  const std::string name = m[1];
  const int p1 = std::stoi(m[2]);
  const bool has_p2 = m[3].matched;
  const int p2 = has_p2 ? std::stoi(m[3]) : 0;

  auto need_two = [&](const char* family) {
    if (!has_p2)
      throw ParseError(std::string(family) + " needs two parameters");
  };
  auto need_one = [&](const char* family) {
    if (has_p2)
      throw ParseError(std::string(family) + " takes a single parameter");
  };

  if (name == "line") {
    need_one("line");
    return line(p1);
  }
  if (name == "ring") {
    need_one("ring");
    return ring(p1);
  }
  if (name == "star") {
    need_one("star");
    return star(p1);
  }
  if (name == "grid") {
    need_two("grid");
    return grid(p1, p2);
  }
  if (name == "honeycomb_patch") {
    need_two("honeycomb_patch");
    return honeycomb_patch(p1, p2);
  }
  if (name == "complete_kary_tree") {
    need_two("complete_kary_tree");
    return complete_kary_tree(p1, p2);
  }
  throw ParseError("unknown topology family '" + name + "'");
}

}  // namespace qdt::families
