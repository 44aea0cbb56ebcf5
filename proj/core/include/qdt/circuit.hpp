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

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qdt/errors.hpp"

namespace qdt {

using Complex = std::complex<double>;

/// Max absolute deviation of M†M from the identity accepted for
/// user-supplied matrices.
inline constexpr double kUnitaryTol = 1e-12;

/// 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<Complex, 4> a{};

  Mat2() = default;
  Mat2(Complex m00, Complex m01, Complex m10, Complex m11)
      : a{m00, m01, m10, m11} {}

  Complex operator()(int r, int c) const { return a[2 * r + c]; }
  Complex& operator()(int r, int c) { return a[2 * r + c]; }

  static Mat2 identity();
  static Mat2 hadamard();
  static Mat2 pauli_x();
  static Mat2 pauli_z();
  /// diag(1, e^{i phi}): phase on level 1 only.
  static Mat2 level1_phase(double phi);

  Mat2 adjoint() const;
  Mat2 operator*(const Mat2& rhs) const;
  double max_abs_diff(const Mat2& rhs) const;
  bool is_unitary(double tol = kUnitaryTol) const;
  bool is_identity(double tol = kUnitaryTol) const;

  bool operator==(const Mat2&) const = default;
};

/// Register of qudits; dims[q] is the dimension of qudit q, each >= 2.
/// Basis states are indexed mixed-radix with qudit 0 most significant.
struct QuditRegister {
  std::vector<int> dims;

  QuditRegister() = default;
  explicit QuditRegister(std::vector<int> d);

  std::size_t size() const { return dims.size(); }
  std::size_t total_dim() const;
  std::vector<std::size_t> strides() const;

  bool operator==(const QuditRegister&) const = default;
};

// --- Gates ---------------------------------------------------------------

/// Swaps levels 0 and m of one qudit, fixes every other level. m = 1 is the
/// ordinary X gate; higher m is the only way auxiliary levels are entered.
struct XmGate {
  int qudit;
  int m;
  bool operator==(const XmGate&) const = default;
};

/// Arbitrary unitary on the {0,1} subspace of one qudit, identity on levels
/// >= 2. `label` is used for rendering and histograms ("H", "P", "V", ...);
/// `param` keeps the angle of parameterized gates such as P(phi).
struct Local2Gate {
  int qudit;
  Mat2 matrix;
  std::string label;
  std::optional<double> param;
  bool operator==(const Local2Gate&) const = default;
};

/// Phase -1 on the joint |11> component only.
struct CzGate {
  int a, b;
  bool operator==(const CzGate&) const = default;
};

/// Phase e^{i theta} on the joint |11> component only.
struct CzThetaGate {
  int a, b;
  double theta;
  bool operator==(const CzThetaGate&) const = default;
};

/// Flips levels 0 and 1 of the target when the control is in level 1;
/// identity otherwise, including on target levels >= 2.
struct CxGate {
  int control, target;
  bool operator==(const CxGate&) const = default;
};

/// Opaque controlled unitary: applies `matrix` to the {0,1} subspaces of the
/// target qudits when the control is in level 1. The matrix is
/// 2^M x 2^M row-major over the M targets. Carries its two-qudit cost as
/// declared metadata.
struct CuBlockGate {
  int control;
  std::vector<int> targets;
  std::vector<Complex> matrix;
  int two_qudit_cost;
  bool operator==(const CuBlockGate&) const = default;
};

using Gate = std::variant<XmGate, Local2Gate, CzGate, CzThetaGate, CxGate,
                          CuBlockGate>;

/// Qudits the gate touches.
std::vector<int> gate_supports(const Gate& g);
/// Contribution to the two-qudit gate count (0 for local gates, declared
/// cost for a block).
int gate_two_qudit_weight(const Gate& g);
/// Adjoint gate: self-adjoint kinds unchanged, CZ_theta negates its angle,
/// matrices are conjugate-transposed.
Gate gate_adjoint(const Gate& g);
/// Throws ValidationError if the gate does not fit the register.
void validate_gate(const Gate& g, const QuditRegister& reg);
/// Short mnemonic for histograms ("X_2", "H", "CZ", ...).
std::string gate_mnemonic(const Gate& g);

// --- Circuit --------------------------------------------------------------

/// Ordered gate sequence over a mixed-dimension register. Circuits are
/// values: every transformation below returns a new circuit.
struct Circuit {
  QuditRegister reg;
  std::vector<Gate> gates;
  std::string name;
  std::vector<std::string> tags;

  Circuit() = default;
  explicit Circuit(QuditRegister r, std::string n = "")
      : reg(std::move(r)), name(std::move(n)) {}

  void add(Gate g);
  std::size_t size() const { return gates.size(); }
};

/// Concatenation; registers must match exactly.
Circuit compose(const Circuit& a, const Circuit& b);

/// Reversed gate list with every gate replaced by its adjoint.
Circuit inverse(const Circuit& c);

/// CZ, CZ_theta and CX count 1 each; a block counts its declared cost;
/// local gates count 0.
int two_qudit_count(const Circuit& c);

/// Greedy as-soon-as-possible layering: each gate goes to the earliest layer
/// strictly after the last layer that touches any of its qudits. Gates in
/// one layer have pairwise disjoint supports.
struct Schedule {
  int depth = 0;
  std::vector<int> layer_of;  // per gate, 1-based
};
Schedule schedule_asap(const Circuit& c);
int depth(const Circuit& c);

/// Replaces every CX(c,t) by H(t) CZ(c,t) H(t). Exact on all levels.
Circuit lower_cx(const Circuit& c);

/// Replaces every CZ_theta(a,b) by level-1 phase gates and two CX gates
/// (each further lowered to CZ). The {0,1}x{0,1} block becomes exactly
/// diag(1,1,1,e^{i theta}) and a `b` on an auxiliary level sees the
/// identity; the one residual is a theta/2 phase on |1>_a x |aux>_b, which
/// no two-CZ replacement can remove (the two-CZ block has unit determinant
/// on the qubit-qubit block while CZ_theta does not).
Circuit lower_cz_theta(const Circuit& c);

/// Gate multiset keyed by mnemonic.
std::map<std::string, int> gate_histogram(const Circuit& c);

/// One gate per line, e.g. "X_2 q3" or "CZ q1 q5".
std::string circuit_to_text(const Circuit& c);

}  // namespace qdt
