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

#include "qnv/compcmp.h"

namespace qnv {
namespace {

constexpr double kPi = std::numbers::pi;
const double kTsirelson = 2.0 * std::numbers::sqrt2;

UnitarySpec single(std::initializer_list<Gate> gates, int n = 1) {
  Circuit c(n);
  for (const auto& g : gates) c.append(g);
  return UnitarySpec(c);
}

UnitarySpec hadamard() { return single({Gate::h(0)}); }

// Random single-qubit unitary from a short random circuit.
UnitarySpec random_1q(RandomSource& rng) { return random_unitary_circuit(1, 2, rng); }

bool equal_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const double d = static_cast<double>(a.rows());
  return std::abs(std::abs((a.adjoint() * b).trace()) / d - 1.0) < 1e-10;
}

TEST(UnitarySpec, ConjugateTransposeAdjointMatchDense) {
  RandomSource rng(1, 0);
  for (int n = 1; n <= 3; ++n) {
    const UnitarySpec u = random_unitary_circuit(n, 3, rng).then(random_clifford_circuit(n, 2, rng));
    const Eigen::MatrixXcd m = u.matrix();
    EXPECT_LT((u.conjugate().matrix() - m.conjugate()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((u.transpose().matrix() - m.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((u.adjoint().matrix() - m.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    EXPECT_LT((m.adjoint() * m - id).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(UnitarySpec, ThenComposesRightToLeft) {
  const UnitarySpec a = single({Gate::h(0)});
  const UnitarySpec b = single({Gate::s(0)});
  const Eigen::MatrixXcd m = a.then(b).matrix();
  EXPECT_LT((m - b.matrix() * a.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DenseOracles, ProcessFidelityOfHadamardFamily) {
  for (int k = 0; k <= 8; ++k) {
    const double phi = 2 * kPi * k / 8;
    const UnitarySpec r = phase_after_hadamard(phi);
    EXPECT_NEAR(process_fidelity(hadamard(), r), (1 + std::cos(phi)) / 2, 1e-12);
    EXPECT_NEAR(fsq_dense(hadamard(), r), (1 + std::cos(phi)) / 2, 1e-12);
    EXPECT_NEAR(chsh_dense(hadamard(), r), std::numbers::sqrt2 * (1 + std::cos(phi)), 1e-12);
  }
}

TEST(DenseOracles, AverageFidelityRelation) {
  EXPECT_NEAR(average_fidelity_from_process(0.0, 2), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(average_fidelity_from_process(1.0, 8), 1.0, 1e-15);
}

TEST(Choi, OverlapEqualsProcessFidelity) {
  RandomSource rng(2, 0);
  for (int n = 1; n <= 2; ++n) {
    for (int i = 0; i < 20; ++i) {
      const UnitarySpec a = random_unitary_circuit(n, 2, rng);
      const UnitarySpec b = random_unitary_circuit(n, 2, rng);
      EXPECT_NEAR(m1_choi_exact(a, b), process_fidelity(a, b), 1e-10);
    }
  }
}

TEST(M1, IdenticalUnitariesAlwaysPass) {
  RandomSource rng(3, 0);
  const UnitarySpec u = random_unitary_circuit(2, 2, rng);
  const MethodEstimate e = m1_choi_compare(u, u, OverlapTest::kSwap, 2000, nullptr, rng);
  EXPECT_DOUBLE_EQ(e.estimate, 1.0);
}

TEST(M1, PhaseFlippedHadamardIsOrthogonal) {
  RandomSource rng(4, 0);
  for (OverlapTest t : {OverlapTest::kSwap, OverlapTest::kBell}) {
    const MethodEstimate e = m1_choi_compare(hadamard(), phase_after_hadamard(kPi), t, 10000, nullptr, rng);
    EXPECT_NEAR(e.exact, 0.0, 1e-12);
    EXPECT_NEAR(e.estimate, 0.0, 5 * e.model_std_error);
  }
}

TEST(M1, RandomSingleQubitPairMatchesTraceOracle) {
  RandomSource rng(5, 0);
  for (int i = 0; i < 5; ++i) {
    const UnitarySpec a = random_1q(rng), b = random_1q(rng);
    const Eigen::MatrixXcd ma = a.matrix(), mb = b.matrix();
    const double f = std::norm((ma.adjoint() * mb).trace()) / 4.0;
    const MethodEstimate e = m1_choi_compare(a, b, OverlapTest::kSwap, 10000, nullptr, rng);
    EXPECT_NEAR(e.exact, f, 1e-12);
    EXPECT_NEAR(e.estimate, f, 5 * e.model_std_error + 1e-12);
  }
}

TEST(CliffordGroup, TwentyFourDistinctClosedElements) {
  const auto& g = clifford_group_1q();
  ASSERT_EQ(g.size(), 24u);
  EXPECT_TRUE(equal_up_to_phase(g.front().matrix(), Eigen::MatrixXcd::Identity(2, 2)));
  std::vector<Eigen::MatrixXcd> mats;
  for (const auto& c : g) mats.push_back(c.matrix());
  for (std::size_t i = 0; i < mats.size(); ++i) {
    for (std::size_t j = i + 1; j < mats.size(); ++j) {
      EXPECT_FALSE(equal_up_to_phase(mats[i], mats[j])) << i << "," << j;
    }
  }
  for (const auto& a : mats) {
    for (const auto& b : mats) {
      const Eigen::MatrixXcd p = a * b;
      bool found = false;
      for (const auto& c : mats) found |= equal_up_to_phase(p, c);
      EXPECT_TRUE(found);
    }
  }
}

TEST(CliffordCircuits, DepthZeroIsIdentity) {
  RandomSource rng(6, 0);
  const UnitarySpec u = random_clifford_circuit(3, 0, rng);
  EXPECT_TRUE(equal_up_to_phase(u.matrix(), Eigen::MatrixXcd::Identity(8, 8)));
}

TEST(CliffordCircuits, AverageFidelityOfIdentityVersusZ) {
  // Initial states U|0> from long random circuits; (I vs Z) has F_p = 0 so
  // the average state fidelity must approach 1/3.
  RandomSource rng(7, 0);
  const int draws = 10000;
  double sum = 0.0, sq = 0.0;
  const UnitarySpec z = single({Gate::z(0)});
  for (int i = 0; i < draws; ++i) {
    StateVector a = random_clifford_circuit(1, 20, rng).circuit.prepare();
    StateVector b = a;
    z.circuit.apply_to(b);
    const double f = std::norm(overlap(a, b));
    sum += f;
    sq += f * f;
  }
  const double mean = sum / draws;
  const double sd = std::sqrt(sq / draws - mean * mean);
  EXPECT_NEAR(mean, 1.0 / 3.0, 5 * sd / std::sqrt(draws));
}

TEST(CliffordCircuits, FramePotentialNearTwoDesignValue) {
  RandomSource rng(8, 0);
  std::vector<Eigen::MatrixXcd> mats;
  for (int i = 0; i < 10000; ++i) mats.push_back(random_clifford_circuit(2, 6, rng).matrix());
  EXPECT_NEAR(second_frame_potential(mats), 2.0, 0.2);
}

TEST(M2Design, ExhaustiveCliffordIdentityIsExact) {
  // ((d+1) F_av - 1)/d over all 24 Cliffords equals the trace formula.
  RandomSource rng(9, 0);
  std::vector<Circuit> pool = design_pool(1, 24, rng);
  for (int i = 0; i < 20; ++i) {
    const UnitarySpec a = random_1q(rng), b = random_1q(rng);
    EXPECT_NEAR(m2_two_design_exact(a, b, pool), process_fidelity(a, b), 1e-10);
  }
}

TEST(M2Design, HadamardFamilyExhaustive) {
  RandomSource rng(10, 0);
  SamplingPlan plan;
  plan.exhaustive = true;
  plan.m_s = 2000;
  for (int k = 0; k < 8; ++k) {
    const double phi = 2 * kPi * k / 8;
    const MethodEstimate e = m2_two_design(hadamard(), phase_after_hadamard(phi), plan,
                                           OverlapTest::kSwap, nullptr, rng);
    EXPECT_NEAR(e.oracle, (1 + std::cos(phi)) / 2, 1e-10);
    EXPECT_NEAR(e.estimate, (1 + std::cos(phi)) / 2, 5 * e.model_std_error + 1e-12) << phi;
  }
}

TEST(M2Design, IdenticalUnitariesGiveOne) {
  RandomSource rng(11, 0);
  const UnitarySpec u = random_unitary_circuit(2, 2, rng);
  SamplingPlan plan;
  plan.L = 10;
  plan.m_s = 50;
  const MethodEstimate e = m2_two_design(u, u, plan, OverlapTest::kBell, nullptr, rng);
  EXPECT_NEAR(e.estimate, 1.0, 1e-12);
}

TEST(Hadamard, ZEigenvalues) {
  RandomSource rng(12, 0);
  const UnitarySpec id = single({}), z = single({Gate::z(0)});
  EXPECT_DOUBLE_EQ(hadamard_test(id, z, 0, HadamardPart::kReal, 500, nullptr, rng).estimate, 1.0);
  EXPECT_DOUBLE_EQ(hadamard_test(id, z, 1, HadamardPart::kReal, 500, nullptr, rng).estimate, -1.0);
  const UnitarySpec u = random_1q(rng);
  EXPECT_DOUBLE_EQ(hadamard_test(u, u, 1, HadamardPart::kReal, 500, nullptr, rng).estimate, 1.0);
}

TEST(Hadamard, QuarterPhaseRealAndImaginary) {
  RandomSource rng(13, 0);
  const UnitarySpec r = phase_after_hadamard(kPi / 2);
  for (HadamardPart part : {HadamardPart::kReal, HadamardPart::kImag}) {
    const MethodEstimate e = hadamard_test(hadamard(), r, 0, part, 10000, nullptr, rng);
    EXPECT_NEAR(e.exact, 0.5, 1e-12);
    EXPECT_NEAR(e.oracle, 0.5, 1e-12);
    EXPECT_NEAR(e.estimate, 0.5, 5 * e.model_std_error);
  }
}

TEST(TraceSampling, IdentityVersusZIsTraceless) {
  RandomSource rng(14, 0);
  SamplingPlan plan;
  plan.exhaustive = true;
  plan.m_s = 300;
  const ComplexEstimate e = m2_trace_sampling(single({}), single({Gate::z(0)}), plan, nullptr, rng);
  EXPECT_NEAR(std::abs(e.oracle), 0.0, 1e-12);
  EXPECT_NEAR(e.estimate.real(), 0.0, 1e-12);  // each basis state is an eigenstate
}

TEST(TraceSampling, IdenticalGivesOne) {
  RandomSource rng(15, 0);
  const UnitarySpec u = random_unitary_circuit(2, 2, rng);
  const ComplexEstimate e = m2_trace_sampling(u, u, SamplingPlan{}, nullptr, rng);
  EXPECT_NEAR(e.estimate.real(), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(e.exact - 1.0), 0.0, 1e-10);
}

TEST(EntangledHadamard, TransposePairSaturates) {
  RandomSource rng(16, 0);
  for (int i = 0; i < 3; ++i) {
    const UnitarySpec u = random_1q(rng);
    const ComplexEstimate e = m2_entangled_hadamard(u.transpose(), u, 10000, nullptr, rng);
    EXPECT_NEAR(std::norm(e.exact), 1.0, 1e-10);
    EXPECT_NEAR(std::norm(e.oracle), 1.0, 1e-10);
    const auto se = [](double x) { return 2.0 * std::sqrt((1 + x) * (1 - x) / 4.0 / 10000); };
    EXPECT_NEAR(e.estimate.real(), e.oracle.real(), 5 * se(e.oracle.real()) + 1e-12);
    EXPECT_NEAR(e.estimate.imag(), e.oracle.imag(), 5 * se(e.oracle.imag()) + 1e-12);
  }
}

TEST(EntangledHadamard, KnownValues) {
  RandomSource rng(17, 0);
  const ComplexEstimate ix = m2_entangled_hadamard(single({}), single({Gate::x(0)}), 2000, nullptr, rng);
  EXPECT_NEAR(std::abs(ix.exact), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ix.oracle), 0.0, 1e-12);
  const ComplexEstimate hh = m2_entangled_hadamard(hadamard(), hadamard(), 2000, nullptr, rng);
  EXPECT_NEAR(std::abs(hh.exact - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(hh.estimate.real(), 1.0, 1e-12);
}

TEST(Fsq, HadamardFamilyAndIdentity) {
  RandomSource rng(18, 0);
  SamplingPlan plan;
  plan.exhaustive = true;
  plan.m_s = 5000;
  for (int k = 0; k < 8; ++k) {
    const double phi = 2 * kPi * k / 8;
    const MethodEstimate e = m2_fsq(hadamard(), phase_after_hadamard(phi), plan, OverlapTest::kSwap, nullptr, rng);
    EXPECT_NEAR(e.oracle, (1 + std::cos(phi)) / 2, 1e-12);
    EXPECT_NEAR(e.estimate, e.oracle, 5 * e.model_std_error + 1e-12);
  }
  const UnitarySpec u = random_unitary_circuit(3, 2, rng);
  plan.m_s = 10;
  EXPECT_NEAR(m2_fsq(u, u, plan, OverlapTest::kBell, nullptr, rng).oracle, 1.0, 1e-12);
}

TEST(Chsh, IdentityAndConjugatePairsSaturate) {
  RandomSource rng(19, 0);
  const MethodEstimate id = m3_chsh(single({}), single({}), 4096, nullptr, rng);
  EXPECT_NEAR(id.exact, kTsirelson, 1e-12);
  EXPECT_NEAR(id.estimate, kTsirelson, 5 * id.model_std_error);
  for (int i = 0; i < 3; ++i) {
    const UnitarySpec u = random_1q(rng);
    const MethodEstimate e = m3_chsh(u, u.conjugate(), 4096, nullptr, rng);
    EXPECT_NEAR(e.exact, kTsirelson, 1e-10);
    EXPECT_NEAR(e.estimate, kTsirelson, 5 * e.model_std_error + 1e-12);
  }
}

TEST(Chsh, HadamardFamilyAndBound) {
  RandomSource rng(20, 0);
  for (int k = 0; k < 16; ++k) {
    const double phi = 2 * kPi * k / 16;
    const MethodEstimate e = m3_chsh(hadamard(), phase_after_hadamard(phi), 4096, nullptr, rng);
    EXPECT_NEAR(e.oracle, std::numbers::sqrt2 * (1 + std::cos(phi)), 1e-10);
    EXPECT_NEAR(e.estimate, e.oracle, 5 * e.model_std_error + 1e-12);
    EXPECT_LE(e.estimate, kTsirelson + 5 * e.model_std_error + 1e-12);
  }
  EXPECT_THROW(m3_chsh(single({}, 2), single({}, 2), 10, nullptr, rng), std::invalid_argument);
}

TEST(Noise, DegradesEstimates) {
  RandomSource rng(21, 0);
  LocalNoise noise;
  noise.budget.f_gate = 0.9;
  noise.budget.f_readout = 0.98;
  const UnitarySpec u = random_unitary_circuit(1, 2, rng);
  const MethodEstimate clean = m3_chsh(u, u.conjugate(), 4000, nullptr, rng);
  const MethodEstimate noisy = m3_chsh(u, u.conjugate(), 4000, &noise, rng);
  EXPECT_LT(noisy.estimate, clean.estimate - 5 * clean.model_std_error);
}

TEST(Sampling, ReproducibleUnderSeed) {
  SamplingPlan plan;
  plan.m_b = 6;
  plan.m_s = 40;
  RandomSource s1(22, 0), s2(22, 0);
  RandomSource setup(23, 0);
  const UnitarySpec a = random_unitary_circuit(3, 3, setup);
  const UnitarySpec b = a.then(random_rotation_layer(3, 1.0, setup));
  const auto e1 = m2_trace_sampling(a, b, plan, nullptr, s1);
  const auto e2 = m2_trace_sampling(a, b, plan, nullptr, s2);
  EXPECT_EQ(e1.estimate, e2.estimate);
}

TEST(Sampling, InvalidPlanRejected) {
  SamplingPlan plan;
  plan.m_s = 0;
  EXPECT_THROW(plan.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace qnv
