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
#include <map>
#include <vector>

#include "qdt/circuit.hpp"
#include "qdt/topology.hpp"

namespace qdt {

/// Everything the emitters need: the rooted tree, the qudit dimensions to
/// synthesize against (at least the minimal ones), and the lowering flags.
struct SynthesisPlan {
  RootedTree tree;
  DimensionAssignment dims;
  bool lower_cx = false;
  bool lower_cz_theta = false;
};

/// Register slot per tree node: nodes in ascending id order.
std::vector<int> register_order(const RootedTree& tree);

/// Spectral form of a 2x2 unitary: U = e^{i alpha} V diag(1, e^{i theta}) V†
/// with theta in (-pi, pi]. The eigenvalue with the smaller phase angle in
/// [0, 2pi) comes first; each eigenvector is scaled so its largest entry is
/// real positive. A U proportional to the identity yields theta = 0 and
/// V = I.
struct SpectralData {
  double alpha = 0.0;
  double theta = 0.0;
  Mat2 v = Mat2::identity();
};
SpectralData spectral_decompose(const Mat2& u);

/// An opaque M-qubit block to be applied to extra target qudits when all
/// control qudits are 1. `matrix` is 2^M x 2^M row-major over the targets'
/// {0,1} subspaces; `two_qudit_cost` is the declared cost of one controlled
/// application.
struct TargetBlock {
  std::vector<int> target_ids;
  std::vector<int> target_dims;  // one per target, each >= 2
  std::vector<Complex> matrix;
  int two_qudit_cost = 0;
};

/// The triple that folds child number i into its parent: X_{1+i} on the
/// parent, CX from the child onto the parent, X on the parent. Indices are
/// register slots. The parent keeps state 1 exactly when parent and child
/// both started at 1; a parent at 0 is parked on level 1+i.
std::array<Gate, 3> elementary_fold(int parent_slot, int child_slot,
                                    int child_index, int parent_dim);

/// Folds every subtree bottom-up so that each child of the root ends in
/// state 1 exactly when its whole subtree started all-ones. Pure
/// basis-state permutation; the root is untouched.
Circuit emit_folding(const RootedTree& tree, const DimensionAssignment& dims);

/// Central step on the root and its children. For the phase family the
/// first n-1 children are folded into the root (levels 2..n), the two-qudit
/// phase gate acts between root and last child, and the folds are undone.
struct CentralCz {};
struct CentralCzTheta {
  double theta;
  bool lowered = false;
};
struct CentralBlock {
  TargetBlock block;
};
using CentralOp = std::variant<CentralCz, CentralCzTheta, CentralBlock>;

Circuit emit_basic_op(const RootedTree& tree, const DimensionAssignment& dims,
                      const CentralOp& central);

/// Multi-controlled Z over all tree nodes: folding, central CZ, unfolding.
/// Exactly 2N-3 two-qudit gates for N nodes.
Circuit synth_cnz(const SynthesisPlan& plan);

/// Multi-controlled X onto tree node `target_node` via two Hadamards around
/// the multi-controlled Z. Same two-qudit count for every target choice.
Circuit synth_cnx(const SynthesisPlan& plan, int target_node);

/// Multi-controlled phase: the central gate becomes CZ_theta. Without
/// lowering this costs 2N-4 CZ-equivalents plus one CZ_theta; with
/// plan.lower_cz_theta it costs 2N-2 two-qudit gates.
Circuit synth_cnz_theta(const SynthesisPlan& plan, double theta);

/// Multi-controlled single-qubit unitary on `target_node`, via the spectral
/// form of U. When U carries a global phase (alpha != 0) an extra
/// multi-controlled phase over the remaining nodes makes the action exact;
/// that correction requires the controls to stay connected once the target
/// is removed (a leaf target, or the root of a two-node tree).
Circuit synth_cnu(const SynthesisPlan& plan, const Mat2& u, int target_node);

/// Controlled block on extra targets with controls on every tree node.
/// All root children fold into the root (levels 2..n+1, hence the root
/// needs dimension >= children + 2) and the block fires off the root.
/// Costs 2N-2+cost two-qudit gates.
Circuit synth_cnu_multi(const SynthesisPlan& plan, const TargetBlock& block);

}  // namespace qdt
