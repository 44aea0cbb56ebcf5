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

#include "qdt/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qdt {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

std::string q(int i) { return "q" + std::to_string(i); }

/// "Vdg" <-> "V" style label flip for non-self-adjoint local gates.
std::string adjoint_label(const std::string& label) {
  if (label == "H" || label == "X" || label == "P") return label;
  if (label.size() > 2 && label.ends_with("dg"))
    return label.substr(0, label.size() - 2);
  return label + "dg";
}

}  // namespace

Mat2 Mat2::identity() {
  return {Complex{1, 0}, Complex{}, Complex{}, Complex{1, 0}};
}

Mat2 Mat2::hadamard() {
  return {Complex{kInvSqrt2, 0}, Complex{kInvSqrt2, 0}, Complex{kInvSqrt2, 0},
          Complex{-kInvSqrt2, 0}};
}

Mat2 Mat2::pauli_x() {
  return {Complex{}, Complex{1, 0}, Complex{1, 0}, Complex{}};
}

Mat2 Mat2::pauli_z() {
  return {Complex{1, 0}, Complex{}, Complex{}, Complex{-1, 0}};
}

Mat2 Mat2::level1_phase(double phi) {
  return {Complex{1, 0}, Complex{}, Complex{}, std::polar(1.0, phi)};
}

Mat2 Mat2::adjoint() const {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

Mat2 Mat2::operator*(const Mat2& rhs) const {
  Mat2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      out(r, c) = (*this)(r, 0) * rhs(0, c) + (*this)(r, 1) * rhs(1, c);
  return out;
}

double Mat2::max_abs_diff(const Mat2& rhs) const {
  double m = 0.0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - rhs.a[i]));
  return m;
}

bool Mat2::is_unitary(double tol) const {
  return (adjoint() * *this).max_abs_diff(identity()) <= tol;
}

bool Mat2::is_identity(double tol) const {
  return max_abs_diff(identity()) <= tol;
}

QuditRegister::QuditRegister(std::vector<int> d) : dims(std::move(d)) {
  if (dims.empty()) throw ValidationError("register must have at least one qudit");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 2)
      throw ValidationError("qudit " + std::to_string(i) +
                            ": dimension must be at least 2");
  }
}

std::size_t QuditRegister::total_dim() const {
  std::size_t total = 1;
  for (int d : dims) {
    total *= static_cast<std::size_t>(d);
    if (total > (static_cast<std::size_t>(1) << 62))
      throw ValidationError("register dimension overflow");
  }
  return total;
}

std::vector<std::size_t> QuditRegister::strides() const {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;)
    s[i - 1] = s[i] * static_cast<std::size_t>(dims[i]);
  return s;
}

std::vector<int> gate_supports(const Gate& g) {
  return std::visit(
      [](const auto& gate) -> std::vector<int> {
        using T = std::decay_t<decltype(gate)>;
        if constexpr (std::is_same_v<T, XmGate>) return {gate.qudit};
        if constexpr (std::is_same_v<T, Local2Gate>) return {gate.qudit};
        if constexpr (std::is_same_v<T, CzGate>) return {gate.a, gate.b};
        if constexpr (std::is_same_v<T, CzThetaGate>) return {gate.a, gate.b};
        if constexpr (std::is_same_v<T, CxGate>)
          return {gate.control, gate.target};
        if constexpr (std::is_same_v<T, CuBlockGate>) {
          std::vector<int> s{gate.control};
          s.insert(s.end(), gate.targets.begin(), gate.targets.end());
          return s;
        }
      },
      g);
}

int gate_two_qudit_weight(const Gate& g) {
  return std::visit(
      [](const auto& gate) -> int {
        using T = std::decay_t<decltype(gate)>;
        if constexpr (std::is_same_v<T, CzGate> ||
                      std::is_same_v<T, CzThetaGate> ||
                      std::is_same_v<T, CxGate>)
          return 1;
        else if constexpr (std::is_same_v<T, CuBlockGate>)
          return gate.two_qudit_cost;
        else
          return 0;
      },
      g);
}

Gate gate_adjoint(const Gate& g) {
  return std::visit(
      [](const auto& gate) -> Gate {
        using T = std::decay_t<decltype(gate)>;
        if constexpr (std::is_same_v<T, CzThetaGate>) {
          return CzThetaGate{gate.a, gate.b, -gate.theta};
        } else if constexpr (std::is_same_v<T, Local2Gate>) {
          Local2Gate adj = gate;
          adj.matrix = gate.matrix.adjoint();
          adj.label = adjoint_label(gate.label);
          if (gate.param) adj.param = -*gate.param;
          return adj;
        } else if constexpr (std::is_same_v<T, CuBlockGate>) {
          CuBlockGate adj = gate;
          const std::size_t n = gate.targets.size();
          const std::size_t dim = static_cast<std::size_t>(1) << n;
          for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c)
              adj.matrix[r * dim + c] = std::conj(gate.matrix[c * dim + r]);
          return adj;
        } else {
          return gate;  // XM, CZ, CX are self-adjoint
        }
      },
      g);
}

void validate_gate(const Gate& g, const QuditRegister& reg) {
  const int n = static_cast<int>(reg.size());
  auto in_range = [&](int idx) { return idx >= 0 && idx < n; };
  for (int idx : gate_supports(g)) {
    if (!in_range(idx))
      throw ValidationError("gate references qudit " + std::to_string(idx) +
                            " outside the register of size " +
                            std::to_string(n));
  }
  std::visit(
      [&](const auto& gate) {
        using T = std::decay_t<decltype(gate)>;
        if constexpr (std::is_same_v<T, XmGate>) {
          if (gate.m < 1 || gate.m >= reg.dims[gate.qudit])
            throw ValidationError(
                "X_" + std::to_string(gate.m) + " needs level " +
                std::to_string(gate.m) + " on qudit " +
                std::to_string(gate.qudit) + " of dimension " +
                std::to_string(reg.dims[gate.qudit]));
        } else if constexpr (std::is_same_v<T, Local2Gate>) {
          if (!gate.matrix.is_unitary())
            throw ValidationError("local gate '" + gate.label +
                                  "' matrix is not unitary");
        } else if constexpr (std::is_same_v<T, CzGate>) {
          if (gate.a == gate.b)
            throw ValidationError("CZ needs two distinct qudits");
        } else if constexpr (std::is_same_v<T, CzThetaGate>) {
          if (gate.a == gate.b)
            throw ValidationError("CZ_theta needs two distinct qudits");
        } else if constexpr (std::is_same_v<T, CxGate>) {
          if (gate.control == gate.target)
            throw ValidationError("CX needs two distinct qudits");
        } else if constexpr (std::is_same_v<T, CuBlockGate>) {
          auto targets = gate.targets;
          if (targets.empty())
            throw ValidationError("controlled block needs at least one target");
          std::sort(targets.begin(), targets.end());
          if (std::adjacent_find(targets.begin(), targets.end()) !=
              targets.end())
            throw ValidationError("controlled block has duplicate targets");
          if (std::binary_search(targets.begin(), targets.end(), gate.control))
            throw ValidationError("controlled block control overlaps targets");
          const std::size_t dim = static_cast<std::size_t>(1)
                                  << gate.targets.size();
          if (gate.matrix.size() != dim * dim)
            throw ValidationError("controlled block matrix must be " +
                                  std::to_string(dim) + "x" +
                                  std::to_string(dim));
          if (gate.two_qudit_cost < 0)
            throw ValidationError("controlled block cost must be >= 0");
          // M†M == I within tolerance
          for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
              Complex acc{};
              for (std::size_t k = 0; k < dim; ++k)
                acc += std::conj(gate.matrix[k * dim + r]) *
                       gate.matrix[k * dim + c];
              Complex want = r == c ? Complex{1, 0} : Complex{};
              if (std::abs(acc - want) > kUnitaryTol)
                throw ValidationError("controlled block matrix is not unitary");
            }
          }
        }
      },
      g);
}

std::string gate_mnemonic(const Gate& g) {
  return std::visit(
      [](const auto& gate) -> std::string {
        using T = std::decay_t<decltype(gate)>;
        if constexpr (std::is_same_v<T, XmGate>)
          return gate.m == 1 ? "X" : "X_" + std::to_string(gate.m);
        else if constexpr (std::is_same_v<T, Local2Gate>)
          return gate.label.empty() ? "U2" : gate.label;
        else if constexpr (std::is_same_v<T, CzGate>)
          return "CZ";
        else if constexpr (std::is_same_v<T, CzThetaGate>)
          return "CZ_theta";
        else if constexpr (std::is_same_v<T, CxGate>)
          return "CX";
        else
          return "CU";
      },
      g);
}

void Circuit::add(Gate g) {
  validate_gate(g, reg);
  gates.push_back(std::move(g));
}

Circuit compose(const Circuit& a, const Circuit& b) {
  if (!(a.reg == b.reg))
    throw ValidationError("cannot compose circuits over different registers");
  Circuit out = a;
  out.gates.insert(out.gates.end(), b.gates.begin(), b.gates.end());
  return out;
}

Circuit inverse(const Circuit& c) {
  Circuit out(c.reg, c.name.empty() ? "" : c.name + "_inv");
  out.tags = c.tags;
  out.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it)
    out.gates.push_back(gate_adjoint(*it));
  return out;
}

int two_qudit_count(const Circuit& c) {
  int total = 0;
  for (const auto& g : c.gates) total += gate_two_qudit_weight(g);
  return total;
}

Schedule schedule_asap(const Circuit& c) {
  Schedule s;
  s.layer_of.reserve(c.gates.size());
  std::vector<int> busy_until(c.reg.size(), 0);
  for (const auto& g : c.gates) {
    int layer = 0;
    for (int qd : gate_supports(g)) layer = std::max(layer, busy_until[qd]);
    ++layer;
    for (int qd : gate_supports(g)) busy_until[qd] = layer;
    s.layer_of.push_back(layer);
    s.depth = std::max(s.depth, layer);
  }
  return s;
}

int depth(const Circuit& c) { return schedule_asap(c).depth; }

Circuit lower_cx(const Circuit& c) {
  Circuit out(c.reg, c.name);
  out.tags = c.tags;
  for (const auto& g : c.gates) {
    if (const auto* cx = std::get_if<CxGate>(&g)) {
      out.add(Local2Gate{cx->target, Mat2::hadamard(), "H", std::nullopt});
      out.add(CzGate{cx->control, cx->target});
      out.add(Local2Gate{cx->target, Mat2::hadamard(), "H", std::nullopt});
    } else {
      out.gates.push_back(g);
    }
  }
  return out;
}

Circuit lower_cz_theta(const Circuit& c) {
  Circuit out(c.reg, c.name);
  out.tags = c.tags;
  auto lowered_cx = [&](int control, int target) {
    out.add(Local2Gate{target, Mat2::hadamard(), "H", std::nullopt});
    out.add(CzGate{control, target});
    out.add(Local2Gate{target, Mat2::hadamard(), "H", std::nullopt});
  };
  for (const auto& g : c.gates) {
    if (const auto* ct = std::get_if<CzThetaGate>(&g)) {
      const double half = ct->theta / 2.0;
      out.add(Local2Gate{ct->a, Mat2::level1_phase(half), "P", half});
      out.add(Local2Gate{ct->b, Mat2::level1_phase(half), "P", half});
      lowered_cx(ct->a, ct->b);
      out.add(Local2Gate{ct->b, Mat2::level1_phase(-half), "P", -half});
      lowered_cx(ct->a, ct->b);
    } else {
      out.gates.push_back(g);
    }
  }
  return out;
}

std::map<std::string, int> gate_histogram(const Circuit& c) {
  std::map<std::string, int> hist;
  for (const auto& g : c.gates) ++hist[gate_mnemonic(g)];
  return hist;
}

std::string circuit_to_text(const Circuit& c) {
  std::ostringstream out;
  for (const auto& g : c.gates) {
    std::visit(
        [&](const auto& gate) {
          using T = std::decay_t<decltype(gate)>;
          if constexpr (std::is_same_v<T, XmGate>) {
            out << gate_mnemonic(Gate{gate}) << ' ' << q(gate.qudit);
          } else if constexpr (std::is_same_v<T, Local2Gate>) {
            out << gate_mnemonic(Gate{gate});
            if (gate.param) out << '(' << *gate.param << ')';
            out << ' ' << q(gate.qudit);
          } else if constexpr (std::is_same_v<T, CzGate>) {
            out << "CZ " << q(gate.a) << ' ' << q(gate.b);
          } else if constexpr (std::is_same_v<T, CzThetaGate>) {
            out << "CZ_theta(" << gate.theta << ") " << q(gate.a) << ' '
                << q(gate.b);
          } else if constexpr (std::is_same_v<T, CxGate>) {
            out << "CX " << q(gate.control) << ' ' << q(gate.target);
          } else if constexpr (std::is_same_v<T, CuBlockGate>) {
            out << "CU " << q(gate.control) << " ->";
            for (int t : gate.targets) out << ' ' << q(t);
            out << " (cost " << gate.two_qudit_cost << ')';
          }
        },
        g);
    out << '\n';
  }
  return out.str();
}

}  // namespace qdt
