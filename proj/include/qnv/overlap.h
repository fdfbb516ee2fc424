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

#ifndef QNV_OVERLAP_H_
#define QNV_OVERLAP_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qnv/noise.h"
#include "qnv/random.h"
#include "qnv/state_vector.h"

namespace qnv {

enum class OverlapTest { kSwap, kBell };

std::string overlap_test_name(OverlapTest test);
/// Accepts "swap" or "bell".
OverlapTest parse_overlap_test(const std::string& name);

/// One shot of an overlap test.
struct TrialRecord {
  bool pass = false;
  std::optional<int> ancilla_bit;
  /// (B, C): bit i of B is the readout of the first state's qubit i, bit i of
  /// C the readout of the second state's qubit i.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> bitstrings;
  int channel_uses = 0;
  /// Stochastic error branches that fired during the shot (transfer, gate,
  /// damping jump, readout flip).
  int error_events = 0;
};

/// Pass iff the bitwise AND of the two strings has even weight.
bool parity_rule_passes(std::uint64_t b, std::uint64_t c);

/// Noise for single-device tests. Each block (one cSWAP, or one CNOT+H pair)
/// gets one gate-error draw over its qubits and damping of its qubits for
/// t_block; every read bit gets a readout flip. f_transfer is unused.
struct LocalNoise {
  NoiseBudget budget;
  /// Draw a gate error after every elementary gate instead of once per block.
  bool per_gate = false;
};

/// Qubit layout: psi on [0, n), psi_tilde on [n, 2n), ancilla at 2n.
TrialRecord swap_test_shot(const StateVector& psi, const StateVector& psi_tilde,
                           const LocalNoise* noise, RandomSource& rng);
/// Qubit layout: psi on [0, n), psi_tilde on [n, 2n).
TrialRecord bell_test_shot(const StateVector& psi, const StateVector& psi_tilde,
                           const LocalNoise* noise, RandomSource& rng);

/// `shots` independent shots. Noiseless runs sample the exact outcome
/// distribution of a single simulated pre-measurement state.
std::vector<TrialRecord> run_overlap_test(OverlapTest test, const StateVector& psi,
                                          const StateVector& psi_tilde, std::size_t shots,
                                          const LocalNoise* noise, RandomSource& rng);

/// Noiseless pass probability (1 + |<psi|psi_tilde>|^2) / 2.
double exact_pass_probability(const StateVector& psi, const StateVector& psi_tilde);

std::size_t count_passes(std::span<const TrialRecord> records);
/// 2 * passes / m - 1, unclamped. Throws on empty input.
double estimate_fidelity(std::span<const TrialRecord> records);
double fidelity_from_counts(std::size_t passes, std::size_t shots);

/// Two-qubit gate count of a SWAP test on n-qubit states when each cSWAP is
/// decomposed (5 per cSWAP). Reporting only; the simulator applies cSWAP
/// as one gate.
inline int swap_test_two_qubit_cost(int n) { return 5 * n; }

}  // namespace qnv

#endif  // QNV_OVERLAP_H_
