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

#include "qnv/pauli.h"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qnv {

PauliObservable::PauliObservable(int num_qubits, std::vector<Term> terms)
    : num_qubits_(num_qubits), terms_(std::move(terms)) {
  if (num_qubits_ < 1) throw std::invalid_argument("observable needs at least one qubit");
  for (const auto& t : terms_) {
    if (!std::isfinite(t.coefficient)) {
      throw std::invalid_argument("observable coefficient is not finite");
    }
    if (static_cast<int>(t.paulis.size()) != num_qubits_) {
      throw std::invalid_argument("pauli string length " + std::to_string(t.paulis.size()) +
                                  " does not match register size " +
                                  std::to_string(num_qubits_));
    }
    for (char c : t.paulis) {
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw std::invalid_argument(std::string("bad pauli character '") + c + "'");
      }
    }
  }
}

PauliObservable PauliObservable::tensor(const PauliObservable& low, const PauliObservable& high) {
  std::vector<Term> terms;
  for (const auto& a : low.terms_) {
    for (const auto& b : high.terms_) {
      terms.push_back({a.coefficient * b.coefficient, a.paulis + b.paulis});
    }
  }
  return PauliObservable(low.num_qubits_ + high.num_qubits_, std::move(terms));
}

double expectation(const StateVector& state, const PauliObservable& obs) {
  if (obs.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("observable length does not match register");
  }
  const auto amps = state.amplitudes();
  double total = 0.0;
  for (const auto& term : obs.terms()) {
    std::size_t flip = 0;
    std::size_t sign = 0;
    int num_y = 0;
    for (std::size_t q = 0; q < term.paulis.size(); ++q) {
      const std::size_t bit = std::size_t{1} << q;
      switch (term.paulis[q]) {
        case 'X': flip |= bit; break;
        case 'Y': flip |= bit; sign |= bit; ++num_y; break;
        case 'Z': sign |= bit; break;
        default: break;
      }
    }
    // P|i> = i^{#Y} (-1)^{|i & sign|} |i ^ flip>
    static const Amplitude kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Amplitude global = kIPow[num_y % 4];
    Amplitude acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const Amplitude v = (std::popcount(i & sign) & 1) ? -amps[i] : amps[i];
      acc += std::conj(amps[i ^ flip]) * v;
    }
    total += term.coefficient * (global * acc).real();
  }
  return total;
}

}  // namespace qnv
