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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdt/circuit.hpp"

namespace qdt {

/// Dense mixed-radix state vector. Index encoding is mixed-radix with
/// qudit 0 most significant, so for dims (2,3) the digits (1,2) sit at
/// index 1*3 + 2 = 5.
struct StateVector {
  QuditRegister reg;
  std::vector<Complex> amps;

  static StateVector basis(const QuditRegister& reg,
                           const std::vector<int>& digits);

  double norm() const;
  std::size_t dim() const { return amps.size(); }
};

/// Largest register the dense simulator will allocate.
inline constexpr std::size_t kMaxStateDim = std::size_t{1} << 22;

std::size_t encode_digits(const QuditRegister& reg,
                          const std::vector<int>& digits);
std::vector<int> decode_index(const QuditRegister& reg, std::size_t index);

/// In-place gate application; strided traversal, no full-matrix build.
void apply_gate(StateVector& state, const Gate& g);

/// Applies all gates in order.
StateVector run(const Circuit& c, StateVector state);

/// Exact expected action of a synthesized gate family, built directly from
/// the gate definitions (never from circuits). For a basis input restricted
/// to levels {0,1} it yields the expected sparse output.
class Oracle {
 public:
  struct Entry {
    std::size_t index;
    Complex amp;
  };

  static Oracle cnz(const QuditRegister& reg);
  static Oracle cnx(const QuditRegister& reg, int target);
  static Oracle cnz_theta(const QuditRegister& reg, double theta);
  static Oracle cnu(const QuditRegister& reg, const Mat2& u, int target);
  /// Controls all at 1 apply `matrix` (2^M x 2^M row-major) to the target
  /// qudits' {0,1} subspace.
  static Oracle cnu_multi(const QuditRegister& reg,
                          std::vector<int> controls, std::vector<int> targets,
                          std::vector<Complex> matrix);

  const QuditRegister& reg() const { return reg_; }

  /// Expected output for a basis input with every digit in {0,1}.
  std::vector<Entry> expected(const std::vector<int>& input_digits) const;

 private:
  enum class Kind { Cnz, Cnx, CnzTheta, Cnu, CnuMulti };

  Oracle(Kind kind, QuditRegister reg) : kind_(kind), reg_(std::move(reg)) {}

  Kind kind_;
  QuditRegister reg_;
  int target_ = -1;
  double theta_ = 0.0;
  Mat2 u_{};
  std::vector<int> controls_;
  std::vector<int> targets_;
  std::vector<Complex> matrix_;
};

/// Result of comparing a circuit against an oracle over qubit-subspace
/// basis inputs.
struct VerificationReport {
  double max_amplitude_error = 0.0;
  double leakage = 0.0;  // max total probability on auxiliary levels
  int basis_states_tested = 0;
  bool pass = false;
  std::optional<std::string> failing_input;
  double tolerance = 0.0;
};

struct VerifyOptions {
  double tolerance = 1e-10;
  /// Exhaustive sweep up to this many basis inputs; above it a uniform
  /// random sample of this size plus the all-ones state is used.
  std::size_t max_inputs = 4096;
  std::uint32_t seed = 0x5eed;
  /// Worker threads (0 = hardware concurrency).
  unsigned threads = 0;
};

VerificationReport verify(const Circuit& c, const Oracle& oracle,
                          const VerifyOptions& options);
VerificationReport verify(const Circuit& c, const Oracle& oracle,
                          double tolerance = 1e-10);

/// Checks that the circuit maps every basis state to exactly one basis
/// state with amplitude 1 and returns the permutation table. Only X_m and
/// CX gates are accepted; anything else raises ValidationError.
std::vector<std::size_t> check_basis_permutation(const Circuit& c);

}  // namespace qdt
