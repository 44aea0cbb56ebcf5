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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qdt/circuit.hpp"
#include "qdt/sim.hpp"
#include "qdt/synth.hpp"
#include "qdt/topology.hpp"

namespace qdt::io {

/// Topology document: {"nodes": [{"id": 1, "dim": 3}, ...],
/// "edges": [[1,2], ...]}. Validation is strict; messages carry the path of
/// the offending field.
CouplingGraph parse_topology(const std::string& text);
std::string serialize_topology(const CouplingGraph& graph);
CouplingGraph load_topology(const std::filesystem::path& path);

/// Circuit document: register dims plus one record per gate
/// ({"kind", "qudits", "params"}); matrices are row-major [re, im] pairs.
/// `node_order` optionally records which tree node each register slot came
/// from.
std::string serialize_circuit(const Circuit& c,
                              const std::vector<int>& node_order = {});
struct LoadedCircuit {
  Circuit circuit;
  std::vector<int> node_order;  // empty when absent
};
LoadedCircuit parse_circuit(const std::string& text);
LoadedCircuit load_circuit(const std::filesystem::path& path);
void save_circuit(const Circuit& c, const std::filesystem::path& path,
                  const std::vector<int>& node_order = {});

std::string serialize_report(const VerificationReport& report);

/// 2x2 unitary file: {"matrix": [[re,im] x 4]} row-major.
Mat2 parse_matrix2(const std::string& text);
Mat2 load_matrix2(const std::filesystem::path& path);

/// Controlled-block file: {"targets": [ids], "dims": [..]?, "n_cu": k,
/// "matrix": [[re,im] x 4^M]}.
TargetBlock parse_block(const std::string& text);
TargetBlock load_block(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qdt::io
