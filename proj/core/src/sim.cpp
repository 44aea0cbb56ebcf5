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

#include "qdt/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <thread>

namespace qdt {

namespace {

std::string digits_to_label(const std::vector<int>& digits) {
  std::string label;
  label.reserve(digits.size());
  for (int d : digits) label += static_cast<char>('0' + d);
  return label;
}

}  // namespace

StateVector StateVector::basis(const QuditRegister& reg,
                               const std::vector<int>& digits) {
  StateVector sv;
  sv.reg = reg;
  std::size_t total = reg.total_dim();
  if (total > kMaxStateDim)
    throw ValidationError("register dimension " + std::to_string(total) +
                          " exceeds the dense simulation limit");
  sv.amps.assign(total, Complex{});
  sv.amps[encode_digits(reg, digits)] = Complex{1, 0};
  return sv;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amps) acc += std::norm(a);
  return std::sqrt(acc);
}

std::size_t encode_digits(const QuditRegister& reg,
                          const std::vector<int>& digits) {
  if (digits.size() != reg.size())
    throw ValidationError("digit count does not match register size");
  auto strides = reg.strides();
  std::size_t index = 0;
  for (std::size_t q = 0; q < digits.size(); ++q) {
    if (digits[q] < 0 || digits[q] >= reg.dims[q])
      throw ValidationError("digit " + std::to_string(digits[q]) +
                            " out of range for qudit " + std::to_string(q));
    index += static_cast<std::size_t>(digits[q]) * strides[q];
  }
  return index;
}

std::vector<int> decode_index(const QuditRegister& reg, std::size_t index) {
  std::vector<int> digits(reg.size());
  for (std::size_t q = reg.size(); q-- > 0;) {
    digits[q] = static_cast<int>(index % reg.dims[q]);
    index /= reg.dims[q];
  }
  return digits;
}

namespace {

// Visits every amplitude pair (level l0, level l1) of one qudit.
template <typename Fn>
void for_each_level_pair(StateVector& sv, int qudit, int l0, int l1, Fn&& fn) {
  const auto strides = sv.reg.strides();
  const std::size_t s = strides[qudit];
  const std::size_t d = static_cast<std::size_t>(sv.reg.dims[qudit]);
  const std::size_t block = s * d;
  const std::size_t total = sv.amps.size();
  for (std::size_t base = 0; base < total; base += block)
    for (std::size_t lo = 0; lo < s; ++lo)
      fn(base + lo + static_cast<std::size_t>(l0) * s,
         base + lo + static_cast<std::size_t>(l1) * s);
}

// Visits every amplitude index whose digits at (pa, pb) are (la, lb).
template <typename Fn>
void for_each_two_digit(StateVector& sv, int pa, int la, int pb, int lb,
                        Fn&& fn) {
  const auto strides = sv.reg.strides();
  int p = pa, r = pb, lp = la, lr = lb;
  if (p > r) {
    std::swap(p, r);
    std::swap(lp, lr);
  }
  const std::size_t sp = strides[p], sr = strides[r];
  const std::size_t bp = sp * static_cast<std::size_t>(sv.reg.dims[p]);
  const std::size_t br = sr * static_cast<std::size_t>(sv.reg.dims[r]);
  const std::size_t total = sv.amps.size();
  const std::size_t off =
      static_cast<std::size_t>(lp) * sp + static_cast<std::size_t>(lr) * sr;
  for (std::size_t hi = 0; hi < total; hi += bp)
    for (std::size_t mid = 0; mid < sp; mid += br)
      for (std::size_t lo = 0; lo < sr; ++lo) fn(hi + mid + lo + off);
}

}  // namespace

void apply_gate(StateVector& state, const Gate& g) {
  validate_gate(g, state.reg);
  std::visit(
      [&](const auto& gate) {
        using T = std::decay_t<decltype(gate)>;
        auto& amps = state.amps;
        if constexpr (std::is_same_v<T, XmGate>) {
          for_each_level_pair(state, gate.qudit, 0, gate.m,
                              [&](std::size_t i0, std::size_t im) {
                                std::swap(amps[i0], amps[im]);
                              });
        } else if constexpr (std::is_same_v<T, Local2Gate>) {
          const Mat2& m = gate.matrix;
          for_each_level_pair(state, gate.qudit, 0, 1,
                              [&](std::size_t i0, std::size_t i1) {
                                const Complex a0 = amps[i0], a1 = amps[i1];
                                amps[i0] = m(0, 0) * a0 + m(0, 1) * a1;
                                amps[i1] = m(1, 0) * a0 + m(1, 1) * a1;
                              });
        } else if constexpr (std::is_same_v<T, CzGate>) {
          for_each_two_digit(state, gate.a, 1, gate.b, 1,
                             [&](std::size_t i) { amps[i] = -amps[i]; });
        } else if constexpr (std::is_same_v<T, CzThetaGate>) {
          const Complex phase = std::polar(1.0, gate.theta);
          for_each_two_digit(state, gate.a, 1, gate.b, 1,
                             [&](std::size_t i) { amps[i] *= phase; });
        } else if constexpr (std::is_same_v<T, CxGate>) {
          const std::size_t st = state.reg.strides()[gate.target];
          for_each_two_digit(state, gate.control, 1, gate.target, 0,
                             [&](std::size_t i) {
                               std::swap(amps[i], amps[i + st]);
                             });
        } else if constexpr (std::is_same_v<T, CuBlockGate>) {
          const auto strides = state.reg.strides();
          const std::size_t m = gate.targets.size();
          const std::size_t bdim = std::size_t{1} << m;
          std::vector<Complex> in(bdim), out(bdim);
          const std::size_t total = amps.size();
          for (std::size_t idx = 0; idx < total; ++idx) {
            const auto control_digit =
                (idx / strides[gate.control]) %
                static_cast<std::size_t>(state.reg.dims[gate.control]);
            if (control_digit != 1) continue;
            bool base = true;
            for (int t : gate.targets) {
              if ((idx / strides[t]) %
                      static_cast<std::size_t>(state.reg.dims[t]) !=
                  0) {
                base = false;
                break;
              }
            }
            if (!base) continue;
            for (std::size_t y = 0; y < bdim; ++y) {
              std::size_t off = idx;
              for (std::size_t t = 0; t < m; ++t)
                if (y & (std::size_t{1} << (m - 1 - t))) off += strides[gate.targets[t]];
              in[y] = amps[off];
            }
            for (std::size_t r = 0; r < bdim; ++r) {
              Complex acc{};
              for (std::size_t c = 0; c < bdim; ++c)
                acc += gate.matrix[r * bdim + c] * in[c];
              out[r] = acc;
            }
            for (std::size_t y = 0; y < bdim; ++y) {
              std::size_t off = idx;
              for (std::size_t t = 0; t < m; ++t)
                if (y & (std::size_t{1} << (m - 1 - t))) off += strides[gate.targets[t]];
              amps[off] = out[y];
            }
          }
        }
      },
      g);
}

StateVector run(const Circuit& c, StateVector state) {
  if (!(c.reg == state.reg))
    throw ValidationError("state register does not match circuit register");
  for (const auto& g : c.gates) apply_gate(state, g);
  return state;
}

// --- Oracle ----------------------------------------------------------------

Oracle Oracle::cnz(const QuditRegister& reg) {
  return Oracle(Kind::Cnz, reg);
}

Oracle Oracle::cnx(const QuditRegister& reg, int target) {
  if (target < 0 || target >= static_cast<int>(reg.size()))
    throw ValidationError("oracle target out of range");
  Oracle o(Kind::Cnx, reg);
  o.target_ = target;
  return o;
}

Oracle Oracle::cnz_theta(const QuditRegister& reg, double theta) {
  Oracle o(Kind::CnzTheta, reg);
  o.theta_ = theta;
  return o;
}

Oracle Oracle::cnu(const QuditRegister& reg, const Mat2& u, int target) {
  if (target < 0 || target >= static_cast<int>(reg.size()))
    throw ValidationError("oracle target out of range");
  if (!u.is_unitary(1e-10)) throw ValidationError("oracle matrix not unitary");
  Oracle o(Kind::Cnu, reg);
  o.target_ = target;
  o.u_ = u;
  return o;
}

Oracle Oracle::cnu_multi(const QuditRegister& reg, std::vector<int> controls,
                         std::vector<int> targets,
                         std::vector<Complex> matrix) {
  Oracle o(Kind::CnuMulti, reg);
  const std::size_t bdim = std::size_t{1} << targets.size();
  if (matrix.size() != bdim * bdim)
    throw ValidationError("oracle block matrix has wrong size");
  o.controls_ = std::move(controls);
  o.targets_ = std::move(targets);
  o.matrix_ = std::move(matrix);
  for (int c : o.controls_)
    if (c < 0 || c >= static_cast<int>(reg.size()))
      throw ValidationError("oracle control out of range");
  for (int t : o.targets_)
    if (t < 0 || t >= static_cast<int>(reg.size()))
      throw ValidationError("oracle target out of range");
  return o;
}

std::vector<Oracle::Entry> Oracle::expected(
    const std::vector<int>& input_digits) const {
  if (input_digits.size() != reg_.size())
    throw ValidationError("oracle input arity mismatch");
  for (int d : input_digits)
    if (d != 0 && d != 1)
      throw ValidationError("oracle inputs must lie in the qubit subspace");

  auto all_ones_except = [&](int skip) {
    for (std::size_t q = 0; q < input_digits.size(); ++q)
      if (static_cast<int>(q) != skip && input_digits[q] != 1) return false;
    return true;
  };

  switch (kind_) {
    case Kind::Cnz: {
      Complex phase =
          all_ones_except(-1) ? Complex{-1, 0} : Complex{1, 0};
      return {{encode_digits(reg_, input_digits), phase}};
    }
    case Kind::CnzTheta: {
      Complex phase = all_ones_except(-1) ? std::polar(1.0, theta_)
                                          : Complex{1, 0};
      return {{encode_digits(reg_, input_digits), phase}};
    }
    case Kind::Cnx: {
      auto out = input_digits;
      if (all_ones_except(target_)) out[target_] ^= 1;
      return {{encode_digits(reg_, out), Complex{1, 0}}};
    }
    case Kind::Cnu: {
      if (!all_ones_except(target_))
        return {{encode_digits(reg_, input_digits), Complex{1, 0}}};
      const int x = input_digits[target_];
      std::vector<Entry> entries;
      for (int y = 0; y < 2; ++y) {
        Complex amp = u_(y, x);
        if (std::abs(amp) == 0.0) continue;
        auto out = input_digits;
        out[target_] = y;
        entries.push_back({encode_digits(reg_, out), amp});
      }
      return entries;
    }
    case Kind::CnuMulti: {
      bool fire = true;
      for (int c : controls_)
        if (input_digits[c] != 1) fire = false;
      if (!fire)
        return {{encode_digits(reg_, input_digits), Complex{1, 0}}};
      const std::size_t m = targets_.size();
      const std::size_t bdim = std::size_t{1} << m;
      std::size_t x = 0;
      for (std::size_t t = 0; t < m; ++t)
        if (input_digits[targets_[t]] == 1) x |= std::size_t{1} << (m - 1 - t);
      std::vector<Entry> entries;
      for (std::size_t y = 0; y < bdim; ++y) {
        Complex amp = matrix_[y * bdim + x];
        if (std::abs(amp) == 0.0) continue;
        auto out = input_digits;
        for (std::size_t t = 0; t < m; ++t)
          out[targets_[t]] = (y >> (m - 1 - t)) & 1 ? 1 : 0;
        entries.push_back({encode_digits(reg_, out), amp});
      }
      return entries;
    }
  }
  throw Error("unreachable oracle kind");
}

// --- Verification ----------------------------------------------------------

namespace {

struct WorkerResult {
  double max_err = 0.0;
  double max_leak = 0.0;
  std::optional<std::uint64_t> failing_pattern;
};

std::vector<int> pattern_digits(std::uint64_t pattern, std::size_t n) {
  std::vector<int> digits(n);
  for (std::size_t qd = 0; qd < n; ++qd)
    digits[qd] = (pattern >> (n - 1 - qd)) & 1 ? 1 : 0;
  return digits;
}

}  // namespace

VerificationReport verify(const Circuit& c, const Oracle& oracle,
                          const VerifyOptions& options) {
  if (!(c.reg == oracle.reg()))
    throw ValidationError("circuit register does not match oracle register");

  const std::size_t n = c.reg.size();
  if (n >= 63) throw ValidationError("too many qudits to enumerate inputs");
  const std::uint64_t space = std::uint64_t{1} << n;

  std::vector<std::uint64_t> patterns;
  if (space <= options.max_inputs) {
    patterns.resize(space);
    for (std::uint64_t p = 0; p < space; ++p) patterns[p] = p;
  } else {
    // Random sample plus the all-ones state, the only phase-carrying input.
    std::mt19937 rng(options.seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, space - 1);
    std::set<std::uint64_t> sample{space - 1};
    while (sample.size() < options.max_inputs + 1) sample.insert(dist(rng));
    patterns.assign(sample.begin(), sample.end());
  }

  // Marks indices with population outside the qubit subspace.
  const std::size_t total = c.reg.total_dim();
  if (total > kMaxStateDim)
    throw ValidationError("register too large for dense verification");
  std::vector<char> is_aux(total, 0);
  {
    std::vector<int> digits(n, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx;
      bool aux = false;
      for (std::size_t qd = n; qd-- > 0;) {
        int digit = static_cast<int>(rem % c.reg.dims[qd]);
        rem /= c.reg.dims[qd];
        if (digit > 1) {
          aux = true;
          break;
        }
      }
      is_aux[idx] = aux ? 1 : 0;
    }
  }

  unsigned thread_count = options.threads
                              ? options.threads
                              : std::max(1u, std::thread::hardware_concurrency());
  thread_count = std::min<unsigned>(
      thread_count, static_cast<unsigned>(std::max<std::size_t>(
                        1, patterns.size() / 8)));

  auto work = [&](std::size_t begin, std::size_t end, WorkerResult& res) {
    StateVector sv;
    sv.reg = c.reg;
    sv.amps.assign(total, Complex{});
    for (std::size_t k = begin; k < end; ++k) {
      const auto digits = pattern_digits(patterns[k], n);
      std::fill(sv.amps.begin(), sv.amps.end(), Complex{});
      sv.amps[encode_digits(c.reg, digits)] = Complex{1, 0};
      for (const auto& g : c.gates) apply_gate(sv, g);

      const auto entries = oracle.expected(digits);
      double err = 0.0, leak = 0.0;
      for (std::size_t idx = 0; idx < total; ++idx) {
        Complex want{};
        for (const auto& e : entries)
          if (e.index == idx) want = e.amp;
        err = std::max(err, std::abs(sv.amps[idx] - want));
        if (is_aux[idx]) leak += std::norm(sv.amps[idx]);
      }
      res.max_err = std::max(res.max_err, err);
      res.max_leak = std::max(res.max_leak, leak);
      if ((err > options.tolerance || leak > options.tolerance) &&
          (!res.failing_pattern || patterns[k] < *res.failing_pattern))
        res.failing_pattern = patterns[k];
    }
  };

  std::vector<WorkerResult> results(thread_count);
  if (thread_count <= 1) {
    work(0, patterns.size(), results[0]);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk =
        (patterns.size() + thread_count - 1) / thread_count;
    for (unsigned t = 0; t < thread_count; ++t) {
      std::size_t begin = std::min(patterns.size(), t * chunk);
      std::size_t end = std::min(patterns.size(), begin + chunk);
      pool.emplace_back(work, begin, end, std::ref(results[t]));
    }
    for (auto& th : pool) th.join();
  }

  VerificationReport report;
  report.tolerance = options.tolerance;
  report.basis_states_tested = static_cast<int>(patterns.size());
  std::optional<std::uint64_t> failing;
  for (const auto& res : results) {
    report.max_amplitude_error =
        std::max(report.max_amplitude_error, res.max_err);
    report.leakage = std::max(report.leakage, res.max_leak);
    if (res.failing_pattern && (!failing || *res.failing_pattern < *failing))
      failing = res.failing_pattern;
  }
  report.pass = report.max_amplitude_error <= options.tolerance &&
                report.leakage <= options.tolerance;
  if (failing)
    report.failing_input = digits_to_label(pattern_digits(*failing, n));
  return report;
}

VerificationReport verify(const Circuit& c, const Oracle& oracle,
                          double tolerance) {
  VerifyOptions options;
  options.tolerance = tolerance;
  return verify(c, oracle, options);
}

std::vector<std::size_t> check_basis_permutation(const Circuit& c) {
  const std::size_t total = c.reg.total_dim();
  if (total > kMaxStateDim)
    throw ValidationError("register too large for a permutation table");
  const auto strides = c.reg.strides();

  for (const auto& g : c.gates) {
    const bool ok =
        std::holds_alternative<XmGate>(g) || std::holds_alternative<CxGate>(g) ||
        (std::holds_alternative<Local2Gate>(g) &&
         std::get<Local2Gate>(g).matrix == Mat2::pauli_x());
    if (!ok)
      throw ValidationError("gate '" + gate_mnemonic(g) +
                            "' is outside the basis-permutation gate set");
  }

  std::vector<std::size_t> perm(total);
  std::vector<int> digits;
  for (std::size_t start = 0; start < total; ++start) {
    digits = decode_index(c.reg, start);
    std::size_t idx = start;
    for (const auto& g : c.gates) {
      if (const auto* xm = std::get_if<XmGate>(&g)) {
        int& d = digits[xm->qudit];
        if (d == 0) {
          d = xm->m;
          idx += static_cast<std::size_t>(xm->m) * strides[xm->qudit];
        } else if (d == xm->m) {
          d = 0;
          idx -= static_cast<std::size_t>(xm->m) * strides[xm->qudit];
        }
      } else if (const auto* cx = std::get_if<CxGate>(&g)) {
        if (digits[cx->control] == 1) {
          int& d = digits[cx->target];
          if (d == 0) {
            d = 1;
            idx += strides[cx->target];
          } else if (d == 1) {
            d = 0;
            idx -= strides[cx->target];
          }
        }
      } else {
        const auto& l = std::get<Local2Gate>(g);
        int& d = digits[l.qudit];
        if (d == 0) {
          d = 1;
          idx += strides[l.qudit];
        } else if (d == 1) {
          d = 0;
          idx -= strides[l.qudit];
        }
      }
    }
    perm[start] = idx;
  }

  std::vector<char> hit(total, 0);
  for (std::size_t image : perm) {
    if (hit[image]) throw Error("internal: permutation table is not bijective");
    hit[image] = 1;
  }
  return perm;
}

}  // namespace qdt
