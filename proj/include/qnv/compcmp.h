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

#ifndef QNV_COMPCMP_H_
#define QNV_COMPCMP_H_

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qnv/circuit.h"
#include "qnv/overlap.h"
#include "qnv/random.h"
#include "qnv/state_vector.h"

namespace qnv {

/// A unitary given by a gate list on n qubits.
struct UnitarySpec {
  UnitarySpec() = default;
  explicit UnitarySpec(Circuit c, std::string name = "");

  int num_qubits() const { return circuit.num_qubits(); }
  std::size_t dim() const { return std::size_t{1} << num_qubits(); }
  Eigen::MatrixXcd matrix() const;

  UnitarySpec adjoint() const;
  /// Complex conjugate, gate by gate (exact, including phases).
  UnitarySpec conjugate() const;
  UnitarySpec transpose() const;
  /// this followed by `next` (next * this as matrices).
  UnitarySpec then(const UnitarySpec& next) const;

  Circuit circuit;
  std::string label;
};

/// Dense matrix of a circuit (column j = circuit applied to |j>).
Eigen::MatrixXcd dense_unitary(const Circuit& circuit);

/// Sampling sizes for the basis/design-state methods.
struct SamplingPlan {
  int m_b = 4;    // basis states per run
  int m_s = 100;  // shots per state
  int L = 24;     // design-state draws
  int K = 24;     // design pool size for design_pool()
  /// Use every design element (n = 1) or every basis state once instead
  /// of drawing with replacement.
  bool exhaustive = false;

  void validate() const;
};

/// Result of one sampled estimator.
struct MethodEstimate {
  double estimate = 0.0;
  /// Binomial standard error from the observed frequencies.
  double std_error = 0.0;
  /// Binomial standard error at the exact probabilities of the same draws.
  double model_std_error = 0.0;
  /// Same draws, exact probabilities, no shots and no noise.
  double oracle = 0.0;
  /// Dense-matrix value of the target quantity.
  double exact = 0.0;
  std::size_t shots = 0;
};

struct ComplexEstimate {
  std::complex<double> estimate;
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  std::complex<double> oracle;
  std::complex<double> exact;
  std::size_t shots = 0;
};

// Dense oracles.
/// |tr(U_L^dagger U_R)|^2 / d^2.
double process_fidelity(const UnitarySpec& u_l, const UnitarySpec& u_r);
/// (d F_p + 1) / (d + 1).
double average_fidelity_from_process(double f_p, std::size_t d);
/// tr(U_L^dagger U_R) / d.
std::complex<double> normalized_trace(const UnitarySpec& u_l, const UnitarySpec& u_r);
/// tr(U_L^* U_R) / d.
std::complex<double> normalized_conjugate_trace(const UnitarySpec& u_l, const UnitarySpec& u_r);
/// (1/d) sum_p |<p|U_L^dagger U_R|p>|^2.
double fsq_dense(const UnitarySpec& u_l, const UnitarySpec& u_r);
/// <S> on (U_L x U_R)|Phi+>, one qubit per side.
double chsh_dense(const UnitarySpec& u_l, const UnitarySpec& u_r);

/// (U x I)|Phi+> on 2n qubits; U acts on [0, n), the reference on [n, 2n).
StateVector choi_state(const UnitarySpec& u);

/// M1: overlap test on the two Choi states; estimate 2 m_p / m - 1.
MethodEstimate m1_choi_compare(const UnitarySpec& u_l, const UnitarySpec& u_r, OverlapTest test,
                               std::size_t shots, const LocalNoise* noise, RandomSource& rng);
/// tr(rho_L rho_R) of the Choi states from amplitudes.
double m1_choi_exact(const UnitarySpec& u_l, const UnitarySpec& u_r);

/// State-preparation circuits U_k forming the design: the 24 Cliffords for
/// n = 1, otherwise `pool_size` random Clifford circuits of depth 3n.
std::vector<Circuit> design_pool(int n, int pool_size, RandomSource& rng);

/// M2 via 2-design averaging:
///   F_p = 2(d+1)/(L d) sum_k p_k - (d+2)/d
/// over L initial states U_k|0>, m_s shots each. For n = 1 the U_k are
/// drawn with replacement from the 24 Cliffords (each exactly once when the
/// plan is exhaustive); for n >= 2 each draw is a fresh random Clifford
/// circuit of depth 3n and plan.K is not used. `oracle` uses exact p_k for
/// the same draws.
MethodEstimate m2_two_design(const UnitarySpec& u_l, const UnitarySpec& u_r,
                             const SamplingPlan& plan, OverlapTest test,
                             const LocalNoise* noise, RandomSource& rng);
/// ((d+1) F_av - 1)/d with F_av averaged exactly over every pool element.
double m2_two_design_exact(const UnitarySpec& u_l, const UnitarySpec& u_r,
                           const std::vector<Circuit>& pool);

enum class HadamardPart { kReal, kImag };

/// Re or Im of <p|U_L^dagger U_R|p> as 2 P(0) - 1 of the ancilla.
MethodEstimate hadamard_test(const UnitarySpec& u_l, const UnitarySpec& u_r, std::uint64_t p,
                             HadamardPart part, std::size_t shots, const LocalNoise* noise,
                             RandomSource& rng);

/// tr(U_L^dagger U_R)/d from real and imaginary Hadamard tests on m_b
/// uniformly drawn basis states (all of them when exhaustive).
ComplexEstimate m2_trace_sampling(const UnitarySpec& u_l, const UnitarySpec& u_r,
                                  const SamplingPlan& plan, const LocalNoise* noise,
                                  RandomSource& rng);

/// tr(U_L^* U_R)/d from a Hadamard test on |Phi+>^n; `shots` for each of the
/// real and imaginary parts. |estimate|^2 = 1 iff U_L = U_R^T up to phase.
ComplexEstimate m2_entangled_hadamard(const UnitarySpec& u_l, const UnitarySpec& u_r,
                                      std::size_t shots, const LocalNoise* noise,
                                      RandomSource& rng);

/// F_sq from overlap tests on U_L|p>, U_R|p> over sampled basis states.
MethodEstimate m2_fsq(const UnitarySpec& u_l, const UnitarySpec& u_r, const SamplingPlan& plan,
                      OverlapTest test, const LocalNoise* noise, RandomSource& rng);

/// <S> with A_0 = (Z-X)/sqrt2, A_1 = (X+Z)/sqrt2 on the U_L side and B_0 = Z,
/// B_1 = X on the U_R side. Settings are scheduled round-robin, so each of
/// the four gets `shots_per_setting` shots. One qubit per side only.
MethodEstimate m3_chsh(const UnitarySpec& u_l, const UnitarySpec& u_r,
                       std::size_t shots_per_setting, const LocalNoise* noise,
                       RandomSource& rng);

/// The 24 single-qubit Cliffords as shortest words over {H, S}, identity
/// first; distinct up to global phase.
const std::vector<UnitarySpec>& clifford_group_1q();

/// `depth` layers, each a random single-qubit Clifford on every qubit then
/// CNOTs on a random pairing with random orientation. Approximate 2-design.
UnitarySpec random_clifford_circuit(int n, int depth, RandomSource& rng);

/// Layers of Haar-random single-qubit gates followed by a CNOT chain.
UnitarySpec random_unitary_circuit(int n, int depth, RandomSource& rng);

/// Product of single-qubit rotations about random axes, angles uniform in
/// [0, max_angle].
UnitarySpec random_rotation_layer(int n, double max_angle, RandomSource& rng);

/// P(phi) H on one qubit, the usual phase-shifted partner of H.
UnitarySpec phase_after_hadamard(double phi);

/// Mean of |tr(U_i^dagger U_{i+1})|^4 over consecutive pairs (cyclic).
double second_frame_potential(const std::vector<Eigen::MatrixXcd>& unitaries);

}  // namespace qnv

#endif  // QNV_COMPCMP_H_
