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

#include "qdt/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qdt::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(std::string("invalid JSON: ") + err.what());
  }
}

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
  if (!obj.is_object())
    throw ParseError(where + ": expected an object");
  for (const char* key : required)
    if (!obj.contains(key))
      throw ParseError(where + ": missing field '" + key + "'");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : required)
      if (it.key() == key) known = true;
    for (const char* key : optional)
      if (it.key() == key) known = true;
    if (!known)
      throw ParseError(where + ": unknown field '" + it.key() + "'");
  }
}

int to_int(const json& value, const std::string& where) {
  if (!value.is_number_integer())
    throw ParseError(where + ": expected an integer");
  return value.get<int>();
}

double to_double(const json& value, const std::string& where) {
  if (!value.is_number())
    throw ParseError(where + ": expected a number");
  return value.get<double>();
}

Complex to_complex(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2)
    throw ParseError(where + ": expected [re, im]");
  return {to_double(value[0], where + "[0]"), to_double(value[1], where + "[1]")};
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

std::vector<Complex> to_complex_vector(const json& value,
                                       const std::string& where) {
  if (!value.is_array()) throw ParseError(where + ": expected an array");
  std::vector<Complex> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i)
    out.push_back(to_complex(value[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json matrix_to_json(const std::vector<Complex>& m) {
  json arr = json::array();
  for (const auto& z : m) arr.push_back(complex_to_json(z));
  return arr;
}

json gate_to_json(const Gate& g) {
  json rec;
  std::visit(
      [&](const auto& gate) {
        using T = std::decay_t<decltype(gate)>;
        if constexpr (std::is_same_v<T, XmGate>) {
          rec["kind"] = "xm";
          rec["qudits"] = json::array({gate.qudit});
          rec["params"] = {{"m", gate.m}};
        } else if constexpr (std::is_same_v<T, Local2Gate>) {
          rec["kind"] = "local2";
          rec["qudits"] = json::array({gate.qudit});
          json params;
          params["label"] = gate.label;
          if (gate.param) params["param"] = *gate.param;
          params["matrix"] = matrix_to_json(
              {gate.matrix.a[0], gate.matrix.a[1], gate.matrix.a[2],
               gate.matrix.a[3]});
          rec["params"] = params;
        } else if constexpr (std::is_same_v<T, CzGate>) {
          rec["kind"] = "cz";
          rec["qudits"] = json::array({gate.a, gate.b});
          rec["params"] = json::object();
        } else if constexpr (std::is_same_v<T, CzThetaGate>) {
          rec["kind"] = "cztheta";
          rec["qudits"] = json::array({gate.a, gate.b});
          rec["params"] = {{"theta", gate.theta}};
        } else if constexpr (std::is_same_v<T, CxGate>) {
          rec["kind"] = "cx";
          rec["qudits"] = json::array({gate.control, gate.target});
          rec["params"] = json::object();
        } else if constexpr (std::is_same_v<T, CuBlockGate>) {
          rec["kind"] = "cublock";
          json qudits = json::array({gate.control});
          for (int t : gate.targets) qudits.push_back(t);
          rec["qudits"] = qudits;
          rec["params"] = {{"n_cu", gate.two_qudit_cost},
                           {"matrix", matrix_to_json(gate.matrix)}};
        }
      },
      g);
  return rec;
}

Gate gate_from_json(const json& rec, const std::string& where) {
  require_keys(rec, where, {"kind", "qudits", "params"}, {});
  if (!rec["qudits"].is_array())
    throw ParseError(where + ".qudits: expected an array");
  std::vector<int> qudits;
  for (std::size_t i = 0; i < rec["qudits"].size(); ++i)
    qudits.push_back(
        to_int(rec["qudits"][i], where + ".qudits[" + std::to_string(i) + "]"));
  const json& params = rec["params"];
  const std::string kind = rec["kind"].is_string()
                               ? rec["kind"].get<std::string>()
                               : throw ParseError(where + ".kind: expected a string");

  auto need_arity = [&](std::size_t n) {
    if (qudits.size() != n)
      throw ParseError(where + ": '" + kind + "' needs " + std::to_string(n) +
                       " qudits");
  };

  if (kind == "xm") {
    need_arity(1);
    require_keys(params, where + ".params", {"m"}, {});
    return XmGate{qudits[0], to_int(params["m"], where + ".params.m")};
  }
  if (kind == "local2") {
    need_arity(1);
    require_keys(params, where + ".params", {"label", "matrix"}, {"param"});
    auto entries = to_complex_vector(params["matrix"], where + ".params.matrix");
    if (entries.size() != 4)
      throw ParseError(where + ".params.matrix: expected 4 entries");
    Local2Gate g{qudits[0],
                 Mat2(entries[0], entries[1], entries[2], entries[3]),
                 params["label"].get<std::string>(), std::nullopt};
    if (params.contains("param"))
      g.param = to_double(params["param"], where + ".params.param");
    return g;
  }
  if (kind == "cz") {
    need_arity(2);
    return CzGate{qudits[0], qudits[1]};
  }
  if (kind == "cztheta") {
    need_arity(2);
    require_keys(params, where + ".params", {"theta"}, {});
    return CzThetaGate{qudits[0], qudits[1],
                       to_double(params["theta"], where + ".params.theta")};
  }
  if (kind == "cx") {
    need_arity(2);
    return CxGate{qudits[0], qudits[1]};
  }
  if (kind == "cublock") {
    if (qudits.size() < 2)
      throw ParseError(where + ": 'cublock' needs a control and targets");
    require_keys(params, where + ".params", {"n_cu", "matrix"}, {});
    CuBlockGate g;
    g.control = qudits[0];
    g.targets.assign(qudits.begin() + 1, qudits.end());
    g.two_qudit_cost = to_int(params["n_cu"], where + ".params.n_cu");
    g.matrix = to_complex_vector(params["matrix"], where + ".params.matrix");
    return g;
  }
  throw ParseError(where + ": unknown gate kind '" + kind + "'");
}

}  // namespace

CouplingGraph parse_topology(const std::string& text) {
  json doc = parse_json(text);
  require_keys(doc, "topology", {"nodes", "edges"}, {});

  if (!doc["nodes"].is_array())
    throw ParseError("topology.nodes: expected an array");
  std::vector<int> nodes;
  std::map<int, int> dims;
  for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
    const std::string where = "topology.nodes[" + std::to_string(i) + "]";
    const json& n = doc["nodes"][i];
    require_keys(n, where, {"id"}, {"dim"});
    int id = to_int(n["id"], where + ".id");
    if (id <= 0) throw ParseError(where + ".id: must be positive");
    nodes.push_back(id);
    if (n.contains("dim")) {
      int d = to_int(n["dim"], where + ".dim");
      if (d < 2) throw ParseError(where + ".dim: must be at least 2");
      dims[id] = d;
    }
  }

  if (!doc["edges"].is_array())
    throw ParseError("topology.edges: expected an array");
  EdgeSet edges;
  for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
    const std::string where = "topology.edges[" + std::to_string(i) + "]";
    const json& e = doc["edges"][i];
    if (!e.is_array() || e.size() != 2)
      throw ParseError(where + ": expected [id, id]");
    edges.push_back({to_int(e[0], where + "[0]"), to_int(e[1], where + "[1]")});
  }

  try {
    return CouplingGraph(nodes, edges, dims);
  } catch (const ValidationError& err) {
    throw ParseError(std::string("topology: ") + err.what());
  }
}

std::string serialize_topology(const CouplingGraph& graph) {
  json doc;
  doc["nodes"] = json::array();
  for (int id : graph.nodes()) {
    json n{{"id", id}};
    if (auto d = graph.dim(id)) n["dim"] = *d;
    doc["nodes"].push_back(n);
  }
  doc["edges"] = json::array();
  for (const auto& [a, b] : graph.edges())
    doc["edges"].push_back(json::array({a, b}));
  return doc.dump(2) + "\n";
}

CouplingGraph load_topology(const std::filesystem::path& path) {
  return parse_topology(read_file(path));
}

std::string serialize_circuit(const Circuit& c,
                              const std::vector<int>& node_order) {
  json doc;
  doc["name"] = c.name;
  doc["register"] = c.reg.dims;
  if (!node_order.empty()) doc["node_order"] = node_order;
  if (!c.tags.empty()) doc["tags"] = c.tags;
  doc["gates"] = json::array();
  for (const auto& g : c.gates) doc["gates"].push_back(gate_to_json(g));
  return doc.dump(2) + "\n";
}

LoadedCircuit parse_circuit(const std::string& text) {
  json doc = parse_json(text);
  require_keys(doc, "circuit", {"register", "gates"},
               {"name", "node_order", "tags"});

  if (!doc["register"].is_array() || doc["register"].empty())
    throw ParseError("circuit.register: expected a non-empty array");
  std::vector<int> dims;
  for (std::size_t i = 0; i < doc["register"].size(); ++i) {
    int d = to_int(doc["register"][i],
                   "circuit.register[" + std::to_string(i) + "]");
    if (d < 2)
      throw ParseError("circuit.register[" + std::to_string(i) +
                       "]: dimension must be at least 2");
    dims.push_back(d);
  }

  LoadedCircuit out;
  out.circuit = Circuit(QuditRegister(dims));
  if (doc.contains("name")) {
    if (!doc["name"].is_string())
      throw ParseError("circuit.name: expected a string");
    out.circuit.name = doc["name"].get<std::string>();
  }
  if (doc.contains("tags")) {
    if (!doc["tags"].is_array())
      throw ParseError("circuit.tags: expected an array");
    for (const auto& t : doc["tags"]) {
      if (!t.is_string()) throw ParseError("circuit.tags: expected strings");
      out.circuit.tags.push_back(t.get<std::string>());
    }
  }
  if (doc.contains("node_order")) {
    if (!doc["node_order"].is_array() ||
        doc["node_order"].size() != dims.size())
      throw ParseError("circuit.node_order: expected one node id per qudit");
    for (std::size_t i = 0; i < doc["node_order"].size(); ++i)
      out.node_order.push_back(to_int(
          doc["node_order"][i], "circuit.node_order[" + std::to_string(i) + "]"));
  }

  if (!doc["gates"].is_array())
    throw ParseError("circuit.gates: expected an array");
  for (std::size_t i = 0; i < doc["gates"].size(); ++i) {
    const std::string where = "circuit.gates[" + std::to_string(i) + "]";
    Gate g = gate_from_json(doc["gates"][i], where);
    try {
      out.circuit.add(std::move(g));
    } catch (const ValidationError& err) {
      throw ParseError(where + ": " + err.what());
    }
  }
  return out;
}

LoadedCircuit load_circuit(const std::filesystem::path& path) {
  return parse_circuit(read_file(path));
}

void save_circuit(const Circuit& c, const std::filesystem::path& path,
                  const std::vector<int>& node_order) {
  write_file(path, serialize_circuit(c, node_order));
}

std::string serialize_report(const VerificationReport& report) {
  json doc;
  doc["max_amplitude_error"] = report.max_amplitude_error;
  doc["leakage"] = report.leakage;
  doc["basis_states_tested"] = report.basis_states_tested;
  doc["pass"] = report.pass;
  doc["tolerance"] = report.tolerance;
  if (report.failing_input)
    doc["failing_input"] = *report.failing_input;
  else
    doc["failing_input"] = nullptr;
  return doc.dump(2) + "\n";
}

Mat2 parse_matrix2(const std::string& text) {
  json doc = parse_json(text);
  require_keys(doc, "matrix file", {"matrix"}, {});
  auto entries = to_complex_vector(doc["matrix"], "matrix");
  if (entries.size() != 4)
    throw ParseError("matrix: expected 4 row-major entries");
  return Mat2(entries[0], entries[1], entries[2], entries[3]);
}

Mat2 load_matrix2(const std::filesystem::path& path) {
  return parse_matrix2(read_file(path));
}

TargetBlock parse_block(const std::string& text) {
  json doc = parse_json(text);
  require_keys(doc, "block file", {"targets", "n_cu", "matrix"}, {"dims"});

  TargetBlock block;
  if (!doc["targets"].is_array() || doc["targets"].empty())
    throw ParseError("block.targets: expected a non-empty array");
  for (std::size_t i = 0; i < doc["targets"].size(); ++i)
    block.target_ids.push_back(
        to_int(doc["targets"][i], "block.targets[" + std::to_string(i) + "]"));
  if (doc.contains("dims")) {
    if (!doc["dims"].is_array() || doc["dims"].size() != block.target_ids.size())
      throw ParseError("block.dims: expected one dimension per target");
    for (std::size_t i = 0; i < doc["dims"].size(); ++i) {
      int d = to_int(doc["dims"][i], "block.dims[" + std::to_string(i) + "]");
      if (d < 2)
        throw ParseError("block.dims[" + std::to_string(i) +
                         "]: must be at least 2");
      block.target_dims.push_back(d);
    }
  } else {
    block.target_dims.assign(block.target_ids.size(), 2);
  }
  block.two_qudit_cost = to_int(doc["n_cu"], "block.n_cu");
  block.matrix = to_complex_vector(doc["matrix"], "block.matrix");
  const std::size_t bdim = std::size_t{1} << block.target_ids.size();
  if (block.matrix.size() != bdim * bdim)
    throw ParseError("block.matrix: expected " + std::to_string(bdim * bdim) +
                     " row-major entries");
  return block;
}

TargetBlock load_block(const std::filesystem::path& path) {
  return parse_block(read_file(path));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path.string());
  out << text;
}

}  // namespace qdt::io
