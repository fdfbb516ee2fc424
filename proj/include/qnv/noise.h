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

#ifndef QNV_NOISE_H_
#define QNV_NOISE_H_

#include "qnv/gate.h"
#include "qnv/random.h"
#include "qnv/state_vector.h"

namespace qnv {

/// Error parameters of a two-node link and its devices.
struct NoiseBudget {
  double f_transfer = 1.0;  // fidelity of one qubit crossing the link
  double gamma = 0.0;       // relaxation rate 1/T1
  double t_block = 0.0;     // duration of one protocol block
  double f_gate = 1.0;      // joint gate fidelity of one block
  double f_readout = 1.0;   // per-bit readout fidelity

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
  bool is_ideal() const;
  double decay_exponent() const { return gamma * t_block; }

  static NoiseBudget ideal() { return {}; }
};

/// Each function below mutates `state` in place and returns true when the
/// stochastic error branch fired. Zero-strength calls return immediately
/// without touching amplitudes.

/// With probability p apply X, Y or Z (uniformly) to `qubit`.
bool apply_depolarizing(StateVector& state, int qubit, double p, RandomSource& rng);

/// Quantum-jump unraveling of amplitude damping with decay probability
/// 1 - exp(-gamma * dt). Returns true on a jump.
bool apply_amplitude_damping(StateVector& state, int qubit, double gamma, double dt,
                             RandomSource& rng);

/// Flips `bit` with probability 1 - f_readout.
int flip_readout(int bit, double f_readout, RandomSource& rng);

/// With probability 1 - f_gate draw one uniformly random Pauli from
/// {I, X, Y, Z} for each target of `gate` and apply them. No gate is applied.
bool apply_gate_error(StateVector& state, const Gate& gate, double f_gate, RandomSource& rng);

/// `gate` followed by apply_gate_error.
bool noisy_gate(StateVector& state, const Gate& gate, double f_gate, RandomSource& rng);

/// Applies a uniformly random element of {I, X, Y, Z} to `qubit`.
void apply_random_pauli(StateVector& state, int qubit, RandomSource& rng);

}  // namespace qnv

#endif  // QNV_NOISE_H_
