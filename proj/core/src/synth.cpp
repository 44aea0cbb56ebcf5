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

#include "qdt/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qdt {

namespace {

constexpr double kSpectralTol = 1e-10;

std::map<int, int> slot_map(const std::vector<int>& order) {
  std::map<int, int> slots;
  for (std::size_t i = 0; i < order.size(); ++i)
    slots[order[i]] = static_cast<int>(i);
  return slots;
}

void require_feasible(const RootedTree& tree, const DimensionAssignment& dims,
                      Purpose purpose) {
  auto violations = check_feasibility(dims.dims, tree, purpose);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "dimension assignment cannot support the synthesis:";
  for (const auto& v : violations) {
    msg << " node " << v.node << " has dimension " << v.declared
        << " but needs at least " << v.required;
    if (v.node == tree.root() &&
        purpose == Purpose::MultiTargetControlledUnitary)
      msg << " (the root needs dimension >= 2 + its child count)";
    else
      msg << " (a node with k tree links needs dimension >= k + 1)";
    msg << ';';
  }
  throw FeasibilityError(msg.str(), violations);
}

QuditRegister register_of(const RootedTree& tree,
                          const DimensionAssignment& dims) {
  std::vector<int> reg_dims;
  reg_dims.reserve(tree.node_count());
  for (int id : tree.nodes()) reg_dims.push_back(dims.at(id));
  return QuditRegister(reg_dims);
}

void emit_triple(Circuit& c, int parent_slot, int child_slot, int child_index,
                 int parent_dim) {
  for (auto& g :
       elementary_fold(parent_slot, child_slot, child_index, parent_dim))
    c.add(std::move(g));
}

/// Folds all subtrees below the root, bottom-up. Nodes at the same depth
/// act on disjoint qudits, so their triples land in parallel layers.
void emit_folding_into(Circuit& c, const RootedTree& tree,
                       const DimensionAssignment& dims,
                       const std::map<int, int>& slots) {
  const auto& levels = tree.levels();
  for (std::size_t depth = levels.size(); depth-- > 1;) {
    for (int node : levels[depth]) {
      const auto& kids = tree.children(node);
      for (std::size_t i = 0; i < kids.size(); ++i)
        emit_triple(c, slots.at(node), slots.at(kids[i]),
                    static_cast<int>(i) + 1, dims.at(node));
    }
  }
}

/// Locals for the in-context exact two-CZ replacement of the central
/// CZ_theta. The operator product A Z B Z C equals diag(e^{-i theta},
/// e^{i theta}) on the root's {0,1} subspace while A B C is the identity, so
/// the unavoidable determinant-compensation phase sits on root level 0 —
/// which no basis state occupies at the central gate once the root has two
/// or more children.
struct CentralPhaseLocals {
  Mat2 first;   // applied before the first CZ
  Mat2 middle;  // between the CZ gates
  Mat2 last;    // after the second CZ
};

CentralPhaseLocals central_phase_locals(double theta) {
  const double h = theta / 2.0;
  const double c = std::cos(h), s = std::sin(h);
  const Complex i{0, 1};
  Mat2 a(Complex{1, 0} / std::numbers::sqrt2, -i / std::numbers::sqrt2,
         Complex{1, 0} / std::numbers::sqrt2, i / std::numbers::sqrt2);
  Mat2 b(Complex{c, 0}, Complex{s, 0}, Complex{-s, 0}, Complex{c, 0});
  Mat2 first =
      Mat2(Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}) *
      a.adjoint();
  return {first, b, a};
}

void emit_central_cz_theta(Circuit& c, int root_slot, int last_child_slot,
                           double theta, bool lowered, int root_children) {
  if (!lowered) {
    c.add(CzThetaGate{root_slot, last_child_slot, theta});
    return;
  }
  if (root_children >= 2) {
    auto locals = central_phase_locals(theta);
    c.add(Local2Gate{root_slot, locals.first, "CPa", std::nullopt});
    c.add(CzGate{root_slot, last_child_slot});
    c.add(Local2Gate{root_slot, locals.middle, "CPb", std::nullopt});
    c.add(CzGate{root_slot, last_child_slot});
    c.add(Local2Gate{root_slot, locals.last, "CPc", std::nullopt});
  } else {
    // Single-child root: the root stays inside {0,1} here, so the plain
    // level-1 phase construction applies.
    const double half = theta / 2.0;
    c.add(Local2Gate{root_slot, Mat2::level1_phase(half), "P", half});
    c.add(Local2Gate{last_child_slot, Mat2::level1_phase(half), "P", half});
    c.add(Local2Gate{last_child_slot, Mat2::hadamard(), "H", std::nullopt});
    c.add(CzGate{root_slot, last_child_slot});
    c.add(Local2Gate{last_child_slot, Mat2::hadamard(), "H", std::nullopt});
    c.add(Local2Gate{last_child_slot, Mat2::level1_phase(-half), "P", -half});
    c.add(Local2Gate{last_child_slot, Mat2::hadamard(), "H", std::nullopt});
    c.add(CzGate{root_slot, last_child_slot});
    c.add(Local2Gate{last_child_slot, Mat2::hadamard(), "H", std::nullopt});
  }
}

void emit_basic_into(Circuit& c, const RootedTree& tree,
                     const DimensionAssignment& dims,
                     const std::map<int, int>& slots, const CentralOp& central,
                     const std::vector<int>& block_target_slots) {
  const int root = tree.root();
  const auto& kids = tree.children(root);
  const int n1 = static_cast<int>(kids.size());
  const int root_slot = slots.at(root);
  const int root_dim = dims.at(root);
  const bool is_block = std::holds_alternative<CentralBlock>(central);
  const int folds = is_block ? n1 : n1 - 1;

  Circuit prefix(c.reg);
  for (int i = 0; i < folds; ++i)
    emit_triple(prefix, root_slot, slots.at(kids[i]), i + 1, root_dim);

  for (const auto& g : prefix.gates) c.gates.push_back(g);

  if (is_block) {
    const auto& block = std::get<CentralBlock>(central).block;
    c.add(CuBlockGate{root_slot, block_target_slots, block.matrix,
                      block.two_qudit_cost});
  } else {
    const int last_child_slot = slots.at(kids[n1 - 1]);
    if (std::holds_alternative<CentralCz>(central)) {
      c.add(CzGate{root_slot, last_child_slot});
    } else {
      const auto& ct = std::get<CentralCzTheta>(central);
      emit_central_cz_theta(c, root_slot, last_child_slot, ct.theta,
                            ct.lowered, n1);
    }
  }

  Circuit undo = inverse(prefix);
  for (const auto& g : undo.gates) c.gates.push_back(g);
}

void apply_lowering_flags(Circuit& c, const SynthesisPlan& plan) {
  if (plan.lower_cx) c = lower_cx(c);
}

int require_synthesizable(const RootedTree& tree) {
  const int n = static_cast<int>(tree.node_count());
  if (n < 2)
    throw ValidationError(
        "synthesis needs at least two qudits (a single node has no controls)");
  return n;
}

}  // namespace

std::vector<int> register_order(const RootedTree& tree) {
  return tree.nodes();  // already ascending
}

std::array<Gate, 3> elementary_fold(int parent_slot, int child_slot,
                                    int child_index, int parent_dim) {
  const int level = child_index + 1;
  if (level >= parent_dim) {
    std::ostringstream msg;
    msg << "folding child " << child_index << " needs parent level " << level
        << " but the parent qudit has dimension " << parent_dim
        << " (a node with k tree links needs dimension at least k+1)";
    throw FeasibilityError(msg.str(), {});
  }
  return {XmGate{parent_slot, level}, CxGate{child_slot, parent_slot},
          XmGate{parent_slot, 1}};
}

Circuit emit_folding(const RootedTree& tree, const DimensionAssignment& dims) {
  Circuit c(register_of(tree, dims), "folding");
  emit_folding_into(c, tree, dims, slot_map(register_order(tree)));
  return c;
}

Circuit emit_basic_op(const RootedTree& tree, const DimensionAssignment& dims,
                      const CentralOp& central) {
  if (std::holds_alternative<CentralBlock>(central)) {
    const auto& block = std::get<CentralBlock>(central).block;
    require_feasible(tree, dims, Purpose::MultiTargetControlledUnitary);
    auto reg_dims = register_of(tree, dims).dims;
    std::vector<int> target_slots;
    for (std::size_t t = 0; t < block.target_ids.size(); ++t) {
      target_slots.push_back(static_cast<int>(reg_dims.size()));
      reg_dims.push_back(t < block.target_dims.size() ? block.target_dims[t]
                                                      : 2);
    }
    Circuit c(QuditRegister(reg_dims), "basic");
    emit_basic_into(c, tree, dims, slot_map(register_order(tree)), central,
                    target_slots);
    return c;
  }
  require_feasible(tree, dims, Purpose::ControlledPhaseFamily);
  Circuit c(register_of(tree, dims), "basic");
  emit_basic_into(c, tree, dims, slot_map(register_order(tree)), central, {});
  return c;
}

Circuit synth_cnz(const SynthesisPlan& plan) {
  const int n = require_synthesizable(plan.tree);
  require_feasible(plan.tree, plan.dims, Purpose::ControlledPhaseFamily);

  Circuit c(register_of(plan.tree, plan.dims),
            "cnz_n" + std::to_string(n));
  const auto slots = slot_map(register_order(plan.tree));
  Circuit folding(c.reg);
  emit_folding_into(folding, plan.tree, plan.dims, slots);

  for (const auto& g : folding.gates) c.gates.push_back(g);
  emit_basic_into(c, plan.tree, plan.dims, slots, CentralCz{}, {});
  Circuit unfolding = inverse(folding);
  for (const auto& g : unfolding.gates) c.gates.push_back(g);

  apply_lowering_flags(c, plan);
  return c;
}

Circuit synth_cnx(const SynthesisPlan& plan, int target_node) {
  if (!plan.tree.contains(target_node))
    throw ValidationError("target node " + std::to_string(target_node) +
                          " is not in the tree");
  Circuit core = synth_cnz(plan);
  const auto slots = slot_map(register_order(plan.tree));
  const int t = slots.at(target_node);

  Circuit c(core.reg, "cnx_n" + std::to_string(plan.tree.node_count()) + "_t" +
                          std::to_string(target_node));
  c.add(Local2Gate{t, Mat2::hadamard(), "H", std::nullopt});
  for (const auto& g : core.gates) c.gates.push_back(g);
  c.add(Local2Gate{t, Mat2::hadamard(), "H", std::nullopt});
  return c;
}

Circuit synth_cnz_theta(const SynthesisPlan& plan, double theta) {
  const int n = require_synthesizable(plan.tree);
  require_feasible(plan.tree, plan.dims, Purpose::ControlledPhaseFamily);

  Circuit c(register_of(plan.tree, plan.dims),
            "cnz_theta_n" + std::to_string(n));
  const auto slots = slot_map(register_order(plan.tree));
  Circuit folding(c.reg);
  emit_folding_into(folding, plan.tree, plan.dims, slots);

  for (const auto& g : folding.gates) c.gates.push_back(g);
  emit_basic_into(c, plan.tree, plan.dims, slots,
                  CentralCzTheta{theta, plan.lower_cz_theta}, {});
  Circuit unfolding = inverse(folding);
  for (const auto& g : unfolding.gates) c.gates.push_back(g);

  apply_lowering_flags(c, plan);
  return c;
}

SpectralData spectral_decompose(const Mat2& u) {
  if (!u.is_unitary(kSpectralTol))
    throw ValidationError("matrix is not unitary");

  SpectralData out;

  const Complex off_mag = u(0, 1) * std::conj(u(0, 1)) +
                          u(1, 0) * std::conj(u(1, 0));
  const bool diagonal = std::sqrt(std::abs(off_mag)) <= kSpectralTol;
  Complex lambda1, lambda2;
  Mat2 v = Mat2::identity();

  if (diagonal && std::abs(u(0, 0) - u(1, 1)) <= kSpectralTol) {
    // Proportional to the identity.
    out.alpha = std::arg(u(0, 0));
    out.theta = 0.0;
    out.v = Mat2::identity();
    return out;
  }

  if (diagonal) {
    lambda1 = u(0, 0);
    lambda2 = u(1, 1);
    v = Mat2::identity();
  } else {
    const Complex tr = u(0, 0) + u(1, 1);
    const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    lambda1 = (tr + disc) / 2.0;
    lambda2 = (tr - disc) / 2.0;
    auto eigvec = [&](Complex lambda) -> std::array<Complex, 2> {
      // Kernel of (U - lambda I); pick the better-conditioned row.
      std::array<Complex, 2> v1{u(0, 1), lambda - u(0, 0)};
      std::array<Complex, 2> v2{lambda - u(1, 1), u(1, 0)};
      double n1 = std::abs(v1[0]) + std::abs(v1[1]);
      double n2 = std::abs(v2[0]) + std::abs(v2[1]);
      auto vec = n1 >= n2 ? v1 : v2;
      double norm = std::sqrt(std::norm(vec[0]) + std::norm(vec[1]));
      vec[0] /= norm;
      vec[1] /= norm;
      // Deterministic phase: largest entry real positive.
      Complex pivot = std::abs(vec[0]) >= std::abs(vec[1]) ? vec[0] : vec[1];
      Complex rot = std::conj(pivot) / std::abs(pivot);
      vec[0] *= rot;
      vec[1] *= rot;
      return vec;
    };
    auto v1 = eigvec(lambda1);
    auto v2 = eigvec(lambda2);
    // Re-orthogonalize so V stays unitary to machine precision even for
    // nearly degenerate inputs.
    Complex overlap = std::conj(v1[0]) * v2[0] + std::conj(v1[1]) * v2[1];
    v2[0] -= overlap * v1[0];
    v2[1] -= overlap * v1[1];
    double norm2 = std::sqrt(std::norm(v2[0]) + std::norm(v2[1]));
    v2[0] /= norm2;
    v2[1] /= norm2;
    Complex pivot = std::abs(v2[0]) >= std::abs(v2[1]) ? v2[0] : v2[1];
    Complex rot = std::conj(pivot) / std::abs(pivot);
    v2[0] *= rot;
    v2[1] *= rot;
    v = Mat2(v1[0], v2[0], v1[1], v2[1]);
  }

  auto angle_of = [](Complex lambda) {
    double a = std::arg(lambda);
    if (a < 0) a += 2.0 * std::numbers::pi;
    return a;
  };
  if (angle_of(lambda2) < angle_of(lambda1)) {
    std::swap(lambda1, lambda2);
    std::swap(v.a[0], v.a[1]);
    std::swap(v.a[2], v.a[3]);
  }

  out.alpha = std::arg(lambda1);
  double theta = angle_of(lambda2) - angle_of(lambda1);
  if (theta > std::numbers::pi) theta -= 2.0 * std::numbers::pi;
  out.theta = theta;
  out.v = v;

  // Reconstruction guard.
  Mat2 z(Complex{1, 0}, Complex{}, Complex{}, std::polar(1.0, out.theta));
  Mat2 rebuilt = out.v * z * out.v.adjoint();
  const Complex phase = std::polar(1.0, out.alpha);
  for (auto& entry : rebuilt.a) entry *= phase;
  if (rebuilt.max_abs_diff(u) > kSpectralTol)
    throw Error("internal: spectral reconstruction drifted");
  return out;
}

Circuit synth_cnu(const SynthesisPlan& plan, const Mat2& u, int target_node) {
  require_synthesizable(plan.tree);
  if (!plan.tree.contains(target_node))
    throw ValidationError("target node " + std::to_string(target_node) +
                          " is not in the tree");

  const SpectralData sd = spectral_decompose(u);
  const auto slots = slot_map(register_order(plan.tree));
  const int t = slots.at(target_node);

  Circuit core = synth_cnz_theta(plan, sd.theta);
  Circuit c(core.reg, "cnu_n" + std::to_string(plan.tree.node_count()));

  const bool v_is_identity = sd.v.is_identity(kSpectralTol);
  if (!v_is_identity)
    c.add(Local2Gate{t, sd.v.adjoint(), "Vdg", std::nullopt});
  for (const auto& g : core.gates) c.gates.push_back(g);
  if (!v_is_identity) c.add(Local2Gate{t, sd.v, "V", std::nullopt});

  double alpha = std::remainder(sd.alpha, 2.0 * std::numbers::pi);
  if (std::abs(alpha) > kSpectralTol) {
    // The leading phase of U fires whenever every control is 1, which is a
    // multi-controlled phase over the other N-1 nodes.
    EdgeSet control_edges;
    for (const auto& [a, b] : plan.tree.edges())
      if (a != target_node && b != target_node)
        control_edges.push_back({a, b});

    if (plan.tree.node_count() == 2) {
      int control = plan.tree.nodes()[0] == target_node ? plan.tree.nodes()[1]
                                                        : plan.tree.nodes()[0];
      c.add(Local2Gate{slots.at(control), Mat2::level1_phase(alpha), "P",
                       alpha});
    } else {
      if (plan.tree.degree(target_node) != 1)
        throw ValidationError(
            "the phase correction for this U needs the controls to stay "
            "connected; pick a leaf target");
      int sub_root = plan.tree.root() == target_node
                         ? plan.tree.children(target_node).front()
                         : plan.tree.root();
      SynthesisPlan sub_plan;
      sub_plan.tree = build_rooted_tree(control_edges, sub_root);
      sub_plan.dims = plan.dims;  // dominates the subtree minimums
      sub_plan.dims.dims.erase(target_node);
      sub_plan.lower_cx = false;
      sub_plan.lower_cz_theta = plan.lower_cz_theta;

      Circuit correction = synth_cnz_theta(sub_plan, alpha);
      // Re-embed: the subtree register order matches the full order with
      // the target slot removed.
      const auto sub_order = register_order(sub_plan.tree);
      std::map<int, int> sub_to_full;
      for (std::size_t i = 0; i < sub_order.size(); ++i)
        sub_to_full[static_cast<int>(i)] = slots.at(sub_order[i]);
      for (const auto& g : correction.gates) {
        Gate moved = g;
        std::visit(
            [&](auto& gate) {
              using T = std::decay_t<decltype(gate)>;
              if constexpr (std::is_same_v<T, XmGate> ||
                            std::is_same_v<T, Local2Gate>) {
                gate.qudit = sub_to_full.at(gate.qudit);
              } else if constexpr (std::is_same_v<T, CzGate> ||
                                   std::is_same_v<T, CzThetaGate>) {
                gate.a = sub_to_full.at(gate.a);
                gate.b = sub_to_full.at(gate.b);
              } else if constexpr (std::is_same_v<T, CxGate>) {
                gate.control = sub_to_full.at(gate.control);
                gate.target = sub_to_full.at(gate.target);
              }
            },
            moved);
        c.add(std::move(moved));
      }
      c.tags.push_back("phase_correction_gates=" +
                       std::to_string(correction.gates.size()));
    }
  }

  if (plan.lower_cx) c = lower_cx(c);
  return c;
}

Circuit synth_cnu_multi(const SynthesisPlan& plan, const TargetBlock& block) {
  const int n = require_synthesizable(plan.tree);
  require_feasible(plan.tree, plan.dims, Purpose::MultiTargetControlledUnitary);

  if (block.target_ids.empty())
    throw ValidationError("controlled block needs at least one target");
  for (int t : block.target_ids)
    if (plan.tree.contains(t))
      throw ValidationError("block target " + std::to_string(t) +
                            " collides with a control node");

  auto reg_dims = register_of(plan.tree, plan.dims).dims;
  std::vector<int> target_slots;
  for (std::size_t t = 0; t < block.target_ids.size(); ++t) {
    target_slots.push_back(static_cast<int>(reg_dims.size()));
    reg_dims.push_back(t < block.target_dims.size() ? block.target_dims[t] : 2);
  }

  Circuit c(QuditRegister(reg_dims),
            "cnu_multi_n" + std::to_string(n));
  const auto slots = slot_map(register_order(plan.tree));
  Circuit folding(c.reg);
  emit_folding_into(folding, plan.tree, plan.dims, slots);

  for (const auto& g : folding.gates) c.gates.push_back(g);
  emit_basic_into(c, plan.tree, plan.dims, slots,
                  CentralBlock{block}, target_slots);
  Circuit unfolding = inverse(folding);
  for (const auto& g : unfolding.gates) c.gates.push_back(g);

  if (plan.lower_cx) c = lower_cx(c);
  return c;
}

}  // namespace qdt
