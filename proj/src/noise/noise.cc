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

#include "qnv/noise.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qnv {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " +
                                std::to_string(p));
  }
}

void check_fidelity(double f, const char* what) {
  if (!(f > 0.0 && f <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in (0, 1], got " +
                                std::to_string(f));
  }
}

void apply_pauli_index(StateVector& state, int qubit, int which) {
  switch (which) {
    case 1: state.apply(Gate::x(qubit)); break;
    case 2: state.apply(Gate::y(qubit)); break;
    case 3: state.apply(Gate::z(qubit)); break;
    default: break;
  }
}

}  // namespace

void NoiseBudget::validate() const {
  check_fidelity(f_transfer, "f_transfer");
  check_fidelity(f_gate, "f_gate");
  check_fidelity(f_readout, "f_readout");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be finite and non-negative");
  }
  if (!(t_block >= 0.0) || !std::isfinite(t_block)) {
    throw std::invalid_argument("t_block must be finite and non-negative");
  }
}

bool NoiseBudget::is_ideal() const {
  return f_transfer == 1.0 && f_gate == 1.0 && f_readout == 1.0 && gamma * t_block == 0.0;
}

bool apply_depolarizing(StateVector& state, int qubit, double p, RandomSource& rng) {
  check_probability(p, "depolarizing probability");
  if (qubit < 0 || qubit >= state.num_qubits()) throw std::out_of_range("depolarizing qubit");
  if (p == 0.0) return false;
  if (!rng.bernoulli(p)) return false;
  apply_pauli_index(state, qubit, 1 + static_cast<int>(rng.below(3)));
  return true;
}

bool apply_amplitude_damping(StateVector& state, int qubit, double gamma, double dt,
                             RandomSource& rng) {
  if (!(gamma >= 0.0) || !(dt >= 0.0)) {
    throw std::invalid_argument("damping rate and duration must be non-negative");
  }
  if (qubit < 0 || qubit >= state.num_qubits()) throw std::out_of_range("damping qubit");
  const double x = gamma * dt;
  if (x == 0.0) return false;
  const double decay = -std::expm1(-x);  // 1 - e^{-x}, accurate for small x

  const double p_one = state.probability_one(qubit);
  if (p_one == 0.0) return false;
  auto amps = state.mutable_amplitudes();
  const std::size_t bit = std::size_t{1} << qubit;

  if (rng.uniform() < decay * p_one) {
    // K1 = sqrt(decay) |0><1|, renormalized
    const double scale = 1.0 / std::sqrt(p_one);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if (i & bit) {
        amps[i ^ bit] = amps[i] * scale;
        amps[i] = 0.0;
      }
    }
    return true;
  }
  // K0 = |0><0| + sqrt(1 - decay) |1><1|, renormalized
  const double survive = std::exp(-x);
  const double scale = 1.0 / std::sqrt((1.0 - p_one) + p_one * survive);
  const double keep = std::sqrt(survive) * scale;
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= (i & bit) ? keep : scale;
  return false;
}

int flip_readout(int bit, double f_readout, RandomSource& rng) {
  check_fidelity(f_readout, "f_readout");
  if (f_readout == 1.0) return bit;
  return rng.bernoulli(1.0 - f_readout) ? 1 - bit : bit;
}

void apply_random_pauli(StateVector& state, int qubit, RandomSource& rng) {
  apply_pauli_index(state, qubit, static_cast<int>(rng.below(4)));
}

bool apply_gate_error(StateVector& state, const Gate& gate, double f_gate, RandomSource& rng) {
  check_fidelity(f_gate, "f_gate");
  if (f_gate == 1.0) return false;
  if (!rng.bernoulli(1.0 - f_gate)) return false;
  for (int q : gate.targets()) apply_random_pauli(state, q, rng);
  return true;
}

bool noisy_gate(StateVector& state, const Gate& gate, double f_gate, RandomSource& rng) {
  check_fidelity(f_gate, "f_gate");
  state.apply(gate);
  return apply_gate_error(state, gate, f_gate, rng);
}

}  // namespace qnv
