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

#ifndef QNV_NETPROTO_H_
#define QNV_NETPROTO_H_

#include <string>
#include <vector>

#include "qnv/circuit.h"
#include "qnv/noise.h"
#include "qnv/overlap.h"
#include "qnv/random.h"
#include "qnv/state_vector.h"

namespace qnv {

enum class Scheme { kS1, kS2, kS3 };

std::string scheme_name(Scheme scheme);
/// Accepts "s1", "s2", "s3" (case-insensitive).
Scheme parse_scheme(const std::string& name);

/// Counts qubit crossings of the inter-node link.
class ChannelLedger {
 public:
  void record_crossing() { ++uses_; }
  int uses() const { return uses_; }

 private:
  int uses_ = 0;
};

/// Where relaxation is charged.
enum class DampingMode {
  /// Each crossing damps the qubit that crossed for t_block.
  kPerCrossing,
  /// Every block end damps every stationary qubit for t_block.
  kAllStationary,
};

std::string damping_mode_name(DampingMode mode);
DampingMode parse_damping_mode(const std::string& name);

struct ProtocolOptions {
  /// S1 only: send each qubit back to node A after its block.
  bool return_qubits = true;
  DampingMode damping = DampingMode::kPerCrossing;
  /// Keep a per-shot event log.
  bool trace = false;
};

struct ProtocolEvent {
  int block;          // -1 for events outside the block loop
  std::string kind;   // transmit, gate, measure, reset, readout
  int uses;           // ledger value after the event
  bool error = false; // a stochastic error branch fired
};

struct ProtocolRun {
  std::vector<TrialRecord> records;
  std::vector<std::vector<ProtocolEvent>> traces;  // empty unless traced
};

/// Ideal state transfer from `from` to `to` (a SWAP of the two roles),
/// followed by depolarizing with p = 1 - f_transfer on `to`. Under
/// kPerCrossing the destination also relaxes for t_block. Throws
/// std::logic_error if `to` is not in |0>. Returns true if an error branch
/// fired.
bool transmit(StateVector& state, int from, int to, ChannelLedger& ledger,
              const NoiseBudget& noise, DampingMode damping, RandomSource& rng);

/// Qubit register layout of each scheme with n data qubits per node.
/// A data on [0, n), B data on [n, 2n); S1 storage 2n and operational
/// ancilla 2n + 1; S2 storage 2n; S3 no ancillas.
int scheme_register_size(Scheme scheme, int n);
int scheme_ancilla_count(Scheme scheme);
/// Channel uses per shot.
int expected_channel_uses(Scheme scheme, int n, bool return_qubits);

/// Distributed SWAP test with storage and operational ancillas at node B.
ProtocolRun run_s1(const StateVector& psi_a, const StateVector& psi_b, std::size_t shots,
                   const NoiseBudget& noise, const ProtocolOptions& options,
                   RandomSource& rng);
/// Distributed Bell-basis test with one storage ancilla at node B. Each
/// block reads two bits as one readout event: with probability
/// 1 - f_readout one of the two bits, chosen uniformly, is flipped.
ProtocolRun run_s2(const StateVector& psi_a, const StateVector& psi_b, std::size_t shots,
                   const NoiseBudget& noise, const ProtocolOptions& options,
                   RandomSource& rng);
/// Bell-basis test with A's qubits flying to B and back; the remote CNOT is
/// H * CPHASE * H on the flying qubit.
ProtocolRun run_s3(const StateVector& psi_a, const StateVector& psi_b, std::size_t shots,
                   const NoiseBudget& noise, const ProtocolOptions& options,
                   RandomSource& rng);

/// Dispatches on `scheme`. Preparation circuits must both act on n qubits.
ProtocolRun run_scheme(Scheme scheme, const Circuit& prep_a, const Circuit& prep_b,
                       std::size_t shots, const NoiseBudget& noise,
                       const ProtocolOptions& options, RandomSource& rng);
ProtocolRun run_scheme(Scheme scheme, const StateVector& psi_a, const StateVector& psi_b,
                       std::size_t shots, const NoiseBudget& noise,
                       const ProtocolOptions& options, RandomSource& rng);

}  // namespace qnv

#endif  // QNV_NETPROTO_H_
