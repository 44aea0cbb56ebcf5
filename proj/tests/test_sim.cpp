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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "qdt/sim.hpp"
#include "support/dense.hpp"
#include "support/generators.hpp"

using namespace qdt;
namespace ts = qdt::testsupport;

TEST_CASE("basis state encoding puts qudit 0 most significant") {
  QuditRegister reg({2, 3});
  CHECK(encode_digits(reg, {1, 2}) == 5);
  CHECK(encode_digits(QuditRegister({2, 2}), {0, 0}) == 0);
  auto sv = StateVector::basis(reg, {1, 2});
  CHECK(sv.amps[5] == Complex{1, 0});
  CHECK(sv.norm() == 1.0);
  CHECK_THROWS_AS(StateVector::basis(reg, {1, 3}), ValidationError);
  CHECK_THROWS_AS(StateVector::basis(reg, {1}), ValidationError);
}

TEST_CASE("encode and decode round-trip") {
  std::mt19937 rng(31);
  QuditRegister reg({2, 5, 3, 2, 4});
  std::uniform_int_distribution<std::size_t> pick(0, reg.total_dim() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t idx = pick(rng);
    CHECK(encode_digits(reg, decode_index(reg, idx)) == idx);
  }
}

TEST_CASE("CZ only phases the joint |11> component") {
  QuditRegister reg({3, 3});
  auto sv = run(Circuit{reg}, StateVector::basis(reg, {2, 1}));
  Circuit c(reg);
  c.add(CzGate{0, 1});
  sv = run(c, StateVector::basis(reg, {2, 1}));
  CHECK(sv.amps[encode_digits(reg, {2, 1})] == Complex{1, 0});

  sv = run(c, StateVector::basis(reg, {1, 1}));
  CHECK(sv.amps[encode_digits(reg, {1, 1})] == Complex{-1, 0});
}

TEST_CASE("X_2 swaps levels 0 and 2 of a qutrit") {
  QuditRegister reg({3});
  Circuit c(reg);
  c.add(XmGate{0, 2});
  auto sv = run(c, StateVector::basis(reg, {0}));
  CHECK(sv.amps[2] == Complex{1, 0});
  sv = run(c, std::move(sv));
  CHECK(sv.amps[0] == Complex{1, 0});  // involution

  Circuit h(reg);
  h.add(Local2Gate{0, Mat2::hadamard(), "H", {}});
  sv = run(h, StateVector::basis(reg, {2}));
  CHECK(sv.amps[2] == Complex{1, 0});  // identity on auxiliary levels
}

TEST_CASE("empty circuit leaves the state alone") {
  QuditRegister reg({2, 3});
  auto sv = run(Circuit{reg}, StateVector::basis(reg, {1, 2}));
  CHECK(sv.amps[encode_digits(reg, {1, 2})] == Complex{1, 0});
}

TEST_CASE("strided simulator agrees with the dense-matrix route") {
  std::mt19937 rng(32);
  QuditRegister reg({3, 2, 4});
  for (int trial = 0; trial < 10; ++trial) {
    auto c = ts::random_circuit(reg, 14, rng);
    auto u = ts::dense_circuit(c);
    for (std::size_t col = 0; col < reg.total_dim(); col += 5) {
      auto out = run(c, StateVector::basis(reg, decode_index(reg, col)));
      for (std::size_t row = 0; row < reg.total_dim(); ++row)
        CHECK(std::abs(out.amps[row] - u[row][col]) <= 1e-12);
    }
  }
}

TEST_CASE("controlled block applies its matrix on the target qubit subspace") {
  QuditRegister reg({2, 3});
  CuBlockGate block{0, {1}, {Complex{}, Complex{1, 0}, Complex{1, 0}, Complex{}},
                    1};
  Circuit c(reg);
  c.add(Gate{block});
  auto out = run(c, StateVector::basis(reg, {1, 0}));
  CHECK(std::abs(out.amps[encode_digits(reg, {1, 1})] - Complex{1, 0}) <= 1e-12);
  out = run(c, StateVector::basis(reg, {0, 1}));
  CHECK(out.amps[encode_digits(reg, {0, 1})] == Complex{1, 0});
  out = run(c, StateVector::basis(reg, {1, 2}));
  CHECK(out.amps[encode_digits(reg, {1, 2})] == Complex{1, 0});
}

TEST_CASE("norm and inner products survive random circuits") {
  std::mt19937 rng(33);
  QuditRegister reg({3, 2, 3});
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 6; ++trial) {
    auto c = ts::random_circuit(reg, 18, rng);
    StateVector a, b;
    a.reg = b.reg = reg;
    a.amps.resize(reg.total_dim());
    b.amps.resize(reg.total_dim());
    for (std::size_t i = 0; i < reg.total_dim(); ++i) {
      a.amps[i] = {gauss(rng), gauss(rng)};
      b.amps[i] = {gauss(rng), gauss(rng)};
    }
    for (auto* sv : {&a, &b}) {
      double n = sv->norm();
      for (auto& amp : sv->amps) amp /= n;
    }
    Complex before{};
    for (std::size_t i = 0; i < reg.total_dim(); ++i)
      before += std::conj(a.amps[i]) * b.amps[i];
    auto ra = run(c, a);
    auto rb = run(c, b);
    CHECK(std::abs(ra.norm() - 1.0) <= 1e-10);
    Complex after{};
    for (std::size_t i = 0; i < reg.total_dim(); ++i)
      after += std::conj(ra.amps[i]) * rb.amps[i];
    CHECK(std::abs(after - before) <= 1e-10);
  }
}

TEST_CASE("oracle definitions") {
  QuditRegister reg({2, 2, 2});
  auto cnz = Oracle::cnz(reg);
  auto flipped = cnz.expected({1, 1, 1});
  REQUIRE(flipped.size() == 1);
  CHECK(flipped[0].index == 7);
  CHECK(flipped[0].amp == Complex{-1, 0});
  for (int pattern = 0; pattern < 7; ++pattern) {
    std::vector<int> digits{(pattern >> 2) & 1, (pattern >> 1) & 1,
                            pattern & 1};
    auto entries = cnz.expected(digits);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].amp == Complex{1, 0});
    CHECK(entries[0].index == encode_digits(reg, digits));
  }

  auto cnx = Oracle::cnx(reg, 2);
  auto toggled = cnx.expected({1, 1, 0});
  REQUIRE(toggled.size() == 1);
  CHECK(toggled[0].index == encode_digits(reg, {1, 1, 1}));
  auto untouched = cnx.expected({0, 1, 1});
  CHECK(untouched[0].index == encode_digits(reg, {0, 1, 1}));

  auto idu = Oracle::cnu(reg, Mat2::identity(), 1);
  for (int pattern = 0; pattern < 8; ++pattern) {
    std::vector<int> digits{(pattern >> 2) & 1, (pattern >> 1) & 1,
                            pattern & 1};
    auto entries = idu.expected(digits);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].index == encode_digits(reg, digits));
    CHECK(std::abs(entries[0].amp - Complex{1, 0}) <= 1e-15);
  }

  CHECK_THROWS_AS(cnz.expected({1, 1}), ValidationError);
  CHECK_THROWS_AS(cnz.expected({1, 2, 0}), ValidationError);
}

TEST_CASE("verify passes a correct circuit and names failing inputs") {
  QuditRegister reg({2, 2});
  Circuit good(reg);
  good.add(CzGate{0, 1});
  auto report = verify(good, Oracle::cnz(reg), 1e-10);
  CHECK(report.pass);
  CHECK(report.basis_states_tested == 4);
  CHECK(report.max_amplitude_error <= 1e-12);
  CHECK(report.leakage == 0.0);
  CHECK(!report.failing_input.has_value());

  Circuit sabotaged(reg);  // missing the CZ
  report = verify(sabotaged, Oracle::cnz(reg), 1e-10);
  CHECK(!report.pass);
  CHECK(report.failing_input == std::string("11"));

  Circuit wrong_reg{QuditRegister({2, 2, 2})};
  CHECK_THROWS_AS(verify(wrong_reg, Oracle::cnz(reg), 1e-10), ValidationError);
}

TEST_CASE("verification sampling always includes the all-ones input") {
  QuditRegister reg(std::vector<int>(13, 2));
  Circuit empty(reg);  // wrong: misses the phase on |1...1>
  VerifyOptions options;
  options.tolerance = 1e-10;
  options.max_inputs = 64;
  auto report = verify(empty, Oracle::cnz(reg), options);
  CHECK(!report.pass);
  CHECK(report.basis_states_tested == 65);
  CHECK(report.failing_input == std::string(13, '1'));
}

TEST_CASE("basis permutation check accepts X_m/CX circuits only") {
  QuditRegister reg({3, 2});
  Circuit c(reg);
  c.add(XmGate{0, 2});
  c.add(CxGate{1, 0});
  auto perm = check_basis_permutation(c);
  CHECK(perm.size() == 6);

  // Composing with the inverse gives the identity permutation.
  auto round_trip = check_basis_permutation(compose(c, inverse(c)));
  for (std::size_t i = 0; i < round_trip.size(); ++i)
    CHECK(round_trip[i] == i);

  Circuit bad(reg);
  bad.add(Local2Gate{0, Mat2::hadamard(), "H", {}});
  CHECK_THROWS_AS(check_basis_permutation(bad), ValidationError);
}

TEST_CASE("permutation table matches the simulator on random circuits") {
  std::mt19937 rng(34);
  QuditRegister reg({3, 2, 4});
  for (int trial = 0; trial < 6; ++trial) {
    auto c = ts::random_circuit(reg, 12, rng, /*permutation_only=*/true);
    auto perm = check_basis_permutation(c);
    for (std::size_t start = 0; start < reg.total_dim(); start += 3) {
      auto out = run(c, StateVector::basis(reg, decode_index(reg, start)));
      CHECK(std::abs(out.amps[perm[start]] - Complex{1, 0}) <= 1e-12);
    }
  }
}
