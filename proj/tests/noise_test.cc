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
#include <numbers>

#include <gtest/gtest.h>

#include "qnv/noise.h"
#include "qnv/pauli.h"

namespace qnv {
namespace {

double five_sigma(double p, int shots) { return 5.0 * std::sqrt(p * (1.0 - p) / shots) + 1e-12; }

double z_of(const StateVector& s) { return expectation(s, PauliObservable(1, {{1.0, "Z"}})); }

TEST(Depolarizing, ZeroProbabilityIsBitExactIdentity) {
  RandomSource rng(1, 0);
  StateVector s = StateVector::random(2, rng);
  const StateVector before = s;
  for (int i = 0; i < 100; ++i) EXPECT_FALSE(apply_depolarizing(s, 1, 0.0, rng));
  for (std::size_t i = 0; i < s.dim(); ++i) EXPECT_EQ(s[i], before[i]);
}

TEST(Depolarizing, FullStrengthOnZeroAveragesZToOneThird) {
  // p = 1 picks X, Y or Z uniformly: <Z> = (-1 - 1 + 1) / 3.
  RandomSource rng(2, 0);
  const int shots = 100000;
  double sum = 0.0;
  for (int i = 0; i < shots; ++i) {
    StateVector s = StateVector::zero(1);
    apply_depolarizing(s, 0, 1.0, rng);
    sum += z_of(s);
  }
  // each shot gives +-1; sd of the mean is sqrt(1 - 1/9) / sqrt(shots)
  EXPECT_NEAR(sum / shots, -1.0 / 3.0, 5 * std::sqrt(8.0 / 9.0 / shots));
}

TEST(Depolarizing, ThreeQuartersIsMaximallyMixing) {
  RandomSource rng(3, 0);
  const int shots = 100000;
  double x = 0, y = 0, z = 0;
  const PauliObservable ox(1, {{1.0, "X"}}), oy(1, {{1.0, "Y"}}), oz(1, {{1.0, "Z"}});
  for (int i = 0; i < shots; ++i) {
    // Bloch vector (1, 1, 1) / sqrt(3)
    StateVector s = StateVector::zero(1);
    s.apply(Gate::unitary1(0, {std::cos(0.4777), -std::sin(0.4777), std::sin(0.4777),
                               std::cos(0.4777)}));
    s.apply(Gate::phase(0, std::numbers::pi / 4));
    apply_depolarizing(s, 0, 0.75, rng);
    x += expectation(s, ox);
    y += expectation(s, oy);
    z += expectation(s, oz);
  }
  const double band = 5.0 / std::sqrt(shots);
  EXPECT_NEAR(x / shots, 0.0, band);
  EXPECT_NEAR(y / shots, 0.0, band);
  EXPECT_NEAR(z / shots, 0.0, band);
}

TEST(Depolarizing, BlochContraction) {
  // Pauli components shrink by 1 - 4p/3 under p-depolarizing.
  RandomSource rng(4, 0);
  const int shots = 100000;
  const double p = 0.3;
  double x = 0;
  for (int i = 0; i < shots; ++i) {
    StateVector s = StateVector::zero(1);
    s.apply(Gate::h(0));
    apply_depolarizing(s, 0, p, rng);
    x += expectation(s, PauliObservable(1, {{1.0, "X"}}));
  }
  const double mean = 1.0 - 4.0 * p / 3.0;
  EXPECT_NEAR(x / shots, mean, 5 * std::sqrt((1 - mean * mean) / shots));
}

TEST(AmplitudeDamping, ZeroStrengthIsIdentity) {
  RandomSource rng(5, 0);
  StateVector s = StateVector::random(2, rng);
  const StateVector before = s;
  EXPECT_FALSE(apply_amplitude_damping(s, 0, 0.0, 3.0, rng));
  EXPECT_FALSE(apply_amplitude_damping(s, 0, 2.0, 0.0, rng));
  for (std::size_t i = 0; i < s.dim(); ++i) EXPECT_EQ(s[i], before[i]);
}

TEST(AmplitudeDamping, FullDecayReachesGround) {
  RandomSource rng(6, 0);
  for (int i = 0; i < 100; ++i) {
    StateVector s = StateVector::basis(1, 1);
    apply_amplitude_damping(s, 0, 1.0, 1e6, rng);
    EXPECT_NEAR(s.probability_one(0), 0.0, 1e-12);
  }
}

TEST(AmplitudeDamping, HalfLifeOnExcitedState) {
  RandomSource rng(7, 0);
  const int shots = 100000;
  int ones = 0;
  for (int i = 0; i < shots; ++i) {
    StateVector s = StateVector::basis(1, 1);
    apply_amplitude_damping(s, 0, std::log(2.0), 1.0, rng);
    ones += measure_qubit(s, 0, rng);
  }
  EXPECT_NEAR(double(ones) / shots, 0.5, five_sigma(0.5, shots));
}

TEST(AmplitudeDamping, ZRelaxationOnSuperposition) {
  // <Z> = 1 - 2 e^{-x} P1 with P1 = 1/2 on |+>.
  RandomSource rng(8, 0);
  const int shots = 100000;
  const double x = 0.7;
  double z = 0;
  for (int i = 0; i < shots; ++i) {
    StateVector s = StateVector::zero(1);
    s.apply(Gate::h(0));
    apply_amplitude_damping(s, 0, x, 1.0, rng);
    z += z_of(s);
    ASSERT_NEAR(s.norm(), 1.0, 1e-10);
  }
  const double expect = 1.0 - std::exp(-x);
  EXPECT_NEAR(z / shots, expect, 5 * std::sqrt((1 - expect * expect) / shots));
}

TEST(Readout, PerfectReadoutUnchanged) {
  RandomSource rng(9, 0);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(flip_readout(0, 1.0, rng), 0);
    EXPECT_EQ(flip_readout(1, 1.0, rng), 1);
  }
}

TEST(Readout, FlipRateMatches) {
  RandomSource rng(10, 0);
  const int trials = 1000000;
  int flips = 0;
  for (int i = 0; i < trials; ++i) flips += flip_readout(0, 0.999, rng);
  EXPECT_NEAR(double(flips) / trials, 0.001, five_sigma(0.001, trials));
}

TEST(Readout, HalfFidelityIsFairCoin) {
  RandomSource rng(11, 0);
  const int trials = 100000;
  int ones = 0;
  for (int i = 0; i < trials; ++i) ones += flip_readout(1, 0.5, rng);
  EXPECT_NEAR(double(ones) / trials, 0.5, five_sigma(0.5, trials));
}

TEST(NoisyGate, PerfectGateMatchesApply) {
  RandomSource rng(12, 0);
  StateVector a = StateVector::random(2, rng);
  StateVector b = a;
  noisy_gate(a, Gate::cnot(0, 1), 1.0, rng);
  b.apply(Gate::cnot(0, 1));
  for (std::size_t i = 0; i < a.dim(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(NoisyGate, CnotOnZeroWrongOutcomeRate) {
  // Error branch: each target gets I, X, Y, Z uniformly. |00> stays |00>
  // iff neither Pauli flips, probability (1/2)^2.
  RandomSource rng(13, 0);
  const int shots = 100000;
  const double f = 0.99;
  int wrong = 0;
  for (int i = 0; i < shots; ++i) {
    StateVector s = StateVector::zero(2);
    noisy_gate(s, Gate::cnot(0, 1), f, rng);
    std::vector<int> q = {0, 1};
    wrong += measure(s, q, rng) != 0;
  }
  const double p = (1.0 - f) * 0.75;
  EXPECT_NEAR(double(wrong) / shots, p, five_sigma(p, shots));
}

TEST(NoisyGate, TwirlAveragesHadamard) {
  // Error branch on |+>: I and X keep <X> = 1, Y and Z flip it.
  RandomSource rng(14, 0);
  const int shots = 100000;
  double x = 0;
  for (int i = 0; i < shots; ++i) {
    StateVector s = StateVector::zero(1);
    noisy_gate(s, Gate::h(0), 0.5, rng);
    x += expectation(s, PauliObservable(1, {{1.0, "X"}}));
  }
  EXPECT_NEAR(x / shots, 0.5, 5 * std::sqrt(0.75 / shots));
}

TEST(NoiseBudget, ValidationRejectsOutOfRange) {
  NoiseBudget b;
  b.f_gate = 1.2;
  EXPECT_THROW(b.validate(), std::invalid_argument);
  b = {};
  b.gamma = -1;
  EXPECT_THROW(b.validate(), std::invalid_argument);
  EXPECT_TRUE(NoiseBudget::ideal().is_ideal());
}

}  // namespace
}  // namespace qnv
