// Copyright 2026 The qnet-verify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "qnv/circuit.h"
#include "qnv/gate.h"
#include "qnv/pauli.h"
#include "qnv/random.h"
#include "qnv/state_vector.h"

namespace qnv {
namespace {

constexpr double kTol = 1e-12;

TEST(RandomSource, SameSeedAndStreamReproduce) {
  RandomSource a(7, 3), b(7, 3), c(7, 4);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs |= x != c.next_u64();
  }
  EXPECT_TRUE(differs);
}

TEST(RandomSource, ChildDoesNotAdvanceParent) {
  RandomSource a(1, 0), b(1, 0);
  const RandomSource k1 = a.child(5);
  const RandomSource k2 = a.child(5);
  EXPECT_EQ(a.next_u64(), b.next_u64());
  RandomSource x = k1, y = k2;
  EXPECT_EQ(x.next_u64(), y.next_u64());
}

TEST(RandomSource, UniformAndBelowRanges) {
  RandomSource r(11, 0);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    ASSERT_LT(r.below(7), 7u);
  }
  EXPECT_NEAR(sum / 20000, 0.5, 5 * std::sqrt(1.0 / 12 / 20000));
}

TEST(Gate, StandardMatricesAreUnitary) {
  for (const Gate& g : {Gate::h(0), Gate::x(0), Gate::y(0), Gate::z(0), Gate::s(0), Gate::sdg(0),
                        Gate::phase(0, 0.3), Gate::cnot(0, 1), Gate::cphase(0, 1), Gate::swap(0, 1),
                        Gate::cswap(0, 1, 2), Gate::toffoli(0, 1, 2)}) {
    const auto m = g.matrix();
    EXPECT_LT(unitarity_defect(m, std::size_t{1} << g.arity()), 1e-12) << g.to_string();
  }
}

TEST(Gate, RejectsNonUnitaryCustomMatrix) {
  EXPECT_THROW(Gate::unitary1(0, {1.0, 1.0, 0.0, 1.0}), std::invalid_argument);
}

TEST(Gate, RepeatedTargetsRejected) {
  EXPECT_THROW(Gate::cnot(1, 1), std::invalid_argument);
}

TEST(StateVector, BellPairProbabilities) {
  StateVector s = StateVector::zero(2);
  s.apply(Gate::h(0));
  s.apply(Gate::cnot(0, 1));
  EXPECT_NEAR(std::abs(s[0]), std::sqrt(0.5), kTol);
  EXPECT_NEAR(std::abs(s[3]), std::sqrt(0.5), kTol);
  EXPECT_NEAR(s.probability_one(0), 0.5, kTol);
  EXPECT_NEAR(s.probability_one(1), 0.5, kTol);
}

TEST(StateVector, LittleEndianBasisIndex) {
  StateVector s = StateVector::zero(3);
  s.apply(Gate::x(0));
  EXPECT_NEAR(std::abs(s[1]), 1.0, kTol);
  s.apply(Gate::x(2));
  EXPECT_NEAR(std::abs(s[5]), 1.0, kTol);
}

TEST(StateVector, MeasurementCollapsesAndCorrelates) {
  RandomSource rng(3, 0);
  for (int t = 0; t < 50; ++t) {
    StateVector s = StateVector::zero(2);
    s.apply(Gate::h(0));
    s.apply(Gate::cnot(0, 1));
    const int a = measure_qubit(s, 0, rng);
    const int b = measure_qubit(s, 1, rng);
    EXPECT_EQ(a, b);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
  }
}

TEST(StateVector, MeasurementFrequencyMatchesBornRule) {
  RandomSource rng(5, 0);
  const double theta = 0.7;
  int ones = 0;
  const int shots = 20000;
  for (int i = 0; i < shots; ++i) {
    StateVector s = StateVector::from_amplitudes({std::cos(theta), std::sin(theta)});
    ones += measure_qubit(s, 0, rng);
  }
  const double p = std::sin(theta) * std::sin(theta);
  EXPECT_NEAR(double(ones) / shots, p, 5 * std::sqrt(p * (1 - p) / shots));
}

TEST(StateVector, RandomStatesAreNormalized) {
  RandomSource rng(9, 0);
  for (int n = 1; n <= 5; ++n) EXPECT_NEAR(StateVector::random(n, rng).norm(), 1.0, 1e-12);
}

TEST(StateVector, TensorOrdersLowQubitsFirst) {
  const StateVector a = StateVector::basis(1, 1);
  const StateVector b = StateVector::basis(2, 2);
  const StateVector t = StateVector::tensor(a, b);
  EXPECT_EQ(t.num_qubits(), 3);
  EXPECT_NEAR(std::abs(t[1 | (2 << 1)]), 1.0, kTol);
}

TEST(StateVector, OverlapIsConjugateLinearInFirstArgument) {
  const StateVector a = StateVector::from_amplitudes({1.0, 0.0});
  const StateVector b = StateVector::from_amplitudes({std::sqrt(0.5), std::complex<double>(0, std::sqrt(0.5))});
  const auto o = overlap(b, a);
  EXPECT_NEAR(o.real(), std::sqrt(0.5), kTol);
  EXPECT_NEAR(overlap(a, b).imag(), 0.0, kTol);
  EXPECT_NEAR(overlap(b, b).real(), 1.0, kTol);
}

TEST(StateVector, FromAmplitudesRejectsBadNorm) {
  EXPECT_THROW(StateVector::from_amplitudes({1.0, 1.0}), std::invalid_argument);
}

TEST(StateVector, ControlledSwapMovesState) {
  // |1>_c |psi>|0> -> |1>_c |0>|psi>
  StateVector s = StateVector::zero(3);
  s.apply(Gate::x(0));
  s.apply(Gate::h(1));
  s.apply(Gate::cswap(0, 1, 2));
  EXPECT_NEAR(s.probability_one(1), 0.0, kTol);
  EXPECT_NEAR(s.probability_one(2), 0.5, kTol);
}

TEST(Circuit, InverseUndoesCircuit) {
  RandomSource rng(21, 0);
  Circuit c(3);
  c.append(Gate::h(0)).append(Gate::cnot(0, 1)).append(Gate::phase(2, 0.4)).append(Gate::s(1));
  c.append(Gate::toffoli(0, 1, 2)).append(Gate::y(2));
  StateVector s = StateVector::random(3, rng);
  const StateVector orig = s;
  c.apply_to(s);
  c.inverse().apply_to(s);
  EXPECT_NEAR(std::norm(overlap(orig, s)), 1.0, 1e-12);
}

TEST(Circuit, ControlledOnZeroValue) {
  Circuit c(1);
  c.append(Gate::x(0));
  const Circuit cc = c.shifted(1, 2).controlled(0, false);
  StateVector s = StateVector::zero(2);
  cc.apply_to(s);
  EXPECT_NEAR(s.probability_one(1), 1.0, kTol);
  StateVector t = StateVector::basis(2, 1);
  cc.apply_to(t);
  EXPECT_NEAR(t.probability_one(1), 0.0, kTol);
}

TEST(Circuit, OutOfRangeGateRejected) {
  Circuit c(2);
  EXPECT_THROW(c.append(Gate::x(2)), std::out_of_range);
}

TEST(Pauli, ExpectationOnBellState) {
  StateVector s = StateVector::zero(2);
  s.apply(Gate::h(0));
  s.apply(Gate::cnot(0, 1));
  EXPECT_NEAR(expectation(s, PauliObservable(2, {{1.0, "XX"}})), 1.0, kTol);
  EXPECT_NEAR(expectation(s, PauliObservable(2, {{1.0, "ZZ"}})), 1.0, kTol);
  EXPECT_NEAR(expectation(s, PauliObservable(2, {{1.0, "YY"}})), -1.0, kTol);
  EXPECT_NEAR(expectation(s, PauliObservable(2, {{1.0, "ZI"}})), 0.0, kTol);
}

}  // namespace
}  // namespace qnv
