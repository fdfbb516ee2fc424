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

#ifndef QNV_STATE_VECTOR_H_
#define QNV_STATE_VECTOR_H_

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qnv/gate.h"
#include "qnv/random.h"

namespace qnv {

inline constexpr int kDefaultMaxQubits = 26;
inline constexpr double kImpossibleBranch = 1e-14;
inline constexpr double kNormTolerance = 1e-10;

/// Dense pure state over n qubits. Qubit 0 is the least significant bit of
/// the amplitude index.
class StateVector {
 public:
  /// |0...0> on `num_qubits` qubits. Throws std::out_of_range outside
  /// [1, max_qubits].
  static StateVector zero(int num_qubits, int max_qubits = kDefaultMaxQubits);
  static StateVector basis(int num_qubits, std::uint64_t index);
  /// Copies and validates amplitudes (power-of-two length, unit norm).
  static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);
  /// Haar-random pure state.
  static StateVector random(int num_qubits, RandomSource& rng);

  /// Product state with `low` on qubits [0, low.n) and `high` above it.
  static StateVector tensor(const StateVector& low, const StateVector& high);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::span<Amplitude> mutable_amplitudes() { return amps_; }
  Amplitude operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  void renormalize();
  double probability_one(int qubit) const;

  void apply(const Gate& gate);

 private:
  StateVector(int num_qubits, std::vector<Amplitude> amps)
      : num_qubits_(num_qubits), amps_(std::move(amps)) {}

  int num_qubits_;
  std::vector<Amplitude> amps_;
};

/// Measures `qubits` in the computational basis, collapsing the state.
/// Bit j of the result is the outcome of qubits[j].
std::uint64_t measure(StateVector& state, std::span<const int> qubits, RandomSource& rng);
int measure_qubit(StateVector& state, int qubit, RandomSource& rng);
/// Measures `qubit` and flips it back to |0> if it read 1.
int reset_qubit(StateVector& state, int qubit, RandomSource& rng);

/// Joint outcome distribution of `qubits` (length 2^|qubits|), without
/// collapsing. Bit j of the index is qubits[j].
std::vector<double> marginal_probabilities(const StateVector& state,
                                           std::span<const int> qubits);

/// <a|b>.
Amplitude overlap(const StateVector& a, const StateVector& b);

}  // namespace qnv

#endif  // QNV_STATE_VECTOR_H_
