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

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qnv/overlap.h"

namespace qnv {
namespace {

constexpr double kPi = std::numbers::pi;

double band(double p, std::size_t shots) { return 5.0 * std::sqrt(p * (1.0 - p) / shots) + 1e-12; }

double pass_rate(const std::vector<TrialRecord>& r) {
  return static_cast<double>(count_passes(r)) / r.size();
}

StateVector plus_n(int n, bool minus = false) {
  StateVector s = StateVector::zero(n);
  for (int q = 0; q < n; ++q) {
    if (minus) s.apply(Gate::x(q));
    s.apply(Gate::h(q));
  }
  return s;
}

StateVector tilted(double theta, double phi) {
  return StateVector::from_amplitudes({std::cos(theta), std::polar(std::sin(theta), phi)});
}

TEST(SwapTest, IdenticalStatesAlwaysPass) {
  RandomSource rng(1, 0);
  const StateVector a = StateVector::random(2, rng);
  for (int i = 0; i < 200; ++i) EXPECT_TRUE(swap_test_shot(a, a, nullptr, rng).pass);
}

TEST(SwapTest, OrthogonalPlusMinusIsHalf) {
  RandomSource rng(2, 0);
  const auto r = run_overlap_test(OverlapTest::kSwap, plus_n(1), plus_n(1, true), 10000, nullptr, rng);
  EXPECT_NEAR(pass_rate(r), 0.5, band(0.5, 10000));
}

TEST(SwapTest, TiltedStateAtThirdPi) {
  RandomSource rng(3, 0);
  const StateVector other = tilted(kPi / 4, kPi / 3);
  const double f = std::norm(overlap(plus_n(1), other));
  EXPECT_NEAR(f, 0.75, 1e-12);
  const double p = (1.0 + f) / 2.0;
  EXPECT_NEAR(p, 0.875, 1e-12);
  const auto r = run_overlap_test(OverlapTest::kSwap, plus_n(1), other, 10000, nullptr, rng);
  EXPECT_NEAR(pass_rate(r), p, band(p, 10000));
}

TEST(SwapTest, SingleShotAgreesWithBatchedSampler) {
  RandomSource rng(4, 0);
  const StateVector a = StateVector::random(2, rng);
  const StateVector b = StateVector::random(2, rng);
  const double p = exact_pass_probability(a, b);
  int passes = 0;
  const int shots = 10000;
  for (int i = 0; i < shots; ++i) passes += swap_test_shot(a, b, nullptr, rng).pass;
  EXPECT_NEAR(double(passes) / shots, p, band(p, shots));
}

TEST(BellTest, ZeroStatesPassEveryShot) {
  RandomSource rng(5, 0);
  const StateVector z = StateVector::zero(3);
  for (int i = 0; i < 200; ++i) {
    const TrialRecord r = bell_test_shot(z, z, nullptr, rng);
    ASSERT_TRUE(r.bitstrings.has_value());
    EXPECT_EQ(r.bitstrings->first & r.bitstrings->second, 0u);
    EXPECT_TRUE(r.pass);
  }
}

TEST(BellTest, PlusVersusMinusTwoQubits) {
  RandomSource rng(6, 0);
  const auto r = run_overlap_test(OverlapTest::kBell, plus_n(2), plus_n(2, true), 10000, nullptr, rng);
  EXPECT_NEAR(pass_rate(r), 0.5, band(0.5, 10000));
}

TEST(BellTest, RandomThreeQubitPair) {
  RandomSource rng(7, 0);
  const StateVector a = StateVector::random(3, rng);
  const StateVector b = StateVector::random(3, rng);
  const double p = (1.0 + std::norm(overlap(a, b))) / 2.0;
  const auto r = run_overlap_test(OverlapTest::kBell, a, b, 10000, nullptr, rng);
  EXPECT_NEAR(pass_rate(r), p, band(p, 10000));
}

TEST(OverlapTests, SwapAndBellAgreeOnRandomPairs) {
  RandomSource rng(8, 0);
  const std::size_t shots = 10000;
  for (int n = 1; n <= 4; ++n) {
    for (int pair = 0; pair < 20; ++pair) {
      const StateVector a = StateVector::random(n, rng);
      const StateVector b = StateVector::random(n, rng);
      const double p = exact_pass_probability(a, b);
      EXPECT_NEAR(p, (1.0 + std::norm(overlap(a, b))) / 2.0, 1e-12);
      const double s = pass_rate(run_overlap_test(OverlapTest::kSwap, a, b, shots, nullptr, rng));
      const double t = pass_rate(run_overlap_test(OverlapTest::kBell, a, b, shots, nullptr, rng));
      EXPECT_NEAR(s, p, band(p, shots)) << "n=" << n << " pair=" << pair;
      EXPECT_NEAR(t, p, band(p, shots)) << "n=" << n << " pair=" << pair;
    }
  }
}

TEST(ParityRule, BellBasisOutcomesForOneQubit) {
  // Measuring each Bell state with CNOT(second -> first), H(second) gives a
  // fixed (B, C). Only the antisymmetric singlet must fail.
  struct Case {
    const char* name;
    std::vector<Amplitude> amps;  // index = first | second << 1
    bool symmetric;
  };
  const double r = std::sqrt(0.5);
  const std::vector<Case> cases = {{"phi+", {r, 0, 0, r}, true},
                                   {"phi-", {r, 0, 0, -r}, true},
                                   {"psi+", {0, r, r, 0}, true},
                                   {"psi-", {0, r, -r, 0}, false}};
  RandomSource rng(9, 0);
  for (const auto& c : cases) {
    StateVector s = StateVector::from_amplitudes(c.amps);
    s.apply(Gate::cnot(1, 0));
    s.apply(Gate::h(1));
    const std::vector<double> probs = marginal_probabilities(s, std::vector<int>{0, 1});
    const auto it = std::max_element(probs.begin(), probs.end());
    ASSERT_NEAR(*it, 1.0, 1e-12) << c.name;
    const std::uint64_t idx = it - probs.begin();
    EXPECT_EQ(parity_rule_passes(idx & 1, idx >> 1), c.symmetric) << c.name;
  }
}

TEST(ParityRule, EvenWeightOfAnd) {
  EXPECT_TRUE(parity_rule_passes(0b101, 0b010));
  EXPECT_FALSE(parity_rule_passes(0b001, 0b001));
  EXPECT_TRUE(parity_rule_passes(0b011, 0b011));
  EXPECT_FALSE(parity_rule_passes(0b111, 0b111));
}

TEST(EstimateFidelity, CountExamples) {
  EXPECT_DOUBLE_EQ(fidelity_from_counts(100, 100), 1.0);
  EXPECT_DOUBLE_EQ(fidelity_from_counts(12288, 16384), 0.5);
  EXPECT_DOUBLE_EQ(fidelity_from_counts(50, 100), 0.0);
  std::vector<TrialRecord> recs(10);
  EXPECT_DOUBLE_EQ(estimate_fidelity(recs), -1.0);  // negative values are not clamped
  EXPECT_THROW(estimate_fidelity(std::vector<TrialRecord>{}), std::invalid_argument);
}

TEST(EstimateFidelity, PermutationInvariant) {
  RandomSource rng(10, 0);
  auto r = run_overlap_test(OverlapTest::kSwap, plus_n(1), tilted(0.3, 1.0), 501, nullptr, rng);
  const double before = estimate_fidelity(r);
  std::reverse(r.begin(), r.end());
  std::rotate(r.begin(), r.begin() + 17, r.end());
  EXPECT_DOUBLE_EQ(estimate_fidelity(r), before);
}

TEST(OverlapTests, NoisyRunsAreSeedDeterministic) {
  LocalNoise noise;
  noise.budget.f_gate = 0.97;
  noise.budget.f_readout = 0.99;
  noise.budget.gamma = 0.01;
  noise.budget.t_block = 1.0;
  for (OverlapTest t : {OverlapTest::kSwap, OverlapTest::kBell}) {
    RandomSource r1(11, 0), r2(11, 0);
    const auto a = run_overlap_test(t, plus_n(2), plus_n(2), 500, &noise, r1);
    const auto b = run_overlap_test(t, plus_n(2), plus_n(2), 500, &noise, r2);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].pass, b[i].pass);
      EXPECT_EQ(a[i].error_events, b[i].error_events);
    }
    EXPECT_LT(pass_rate(a), 1.0);
  }
}

TEST(OverlapTests, SizeMismatchThrows) {
  RandomSource rng(12, 0);
  EXPECT_THROW(swap_test_shot(StateVector::zero(1), StateVector::zero(2), nullptr, rng),
               std::invalid_argument);
}

TEST(OverlapTests, SwapCostMetadata) { EXPECT_EQ(swap_test_two_qubit_cost(4), 20); }

}  // namespace
}  // namespace qnv
