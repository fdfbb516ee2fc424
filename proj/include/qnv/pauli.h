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

#ifndef QNV_PAULI_H_
#define QNV_PAULI_H_

#include <string>
#include <vector>

#include "qnv/state_vector.h"

namespace qnv {

/// Real linear combination of Pauli strings. Character i of each string acts
/// on qubit i and is one of I, X, Y, Z.
class PauliObservable {
 public:
  struct Term {
    double coefficient;
    std::string paulis;
  };

  PauliObservable(int num_qubits, std::vector<Term> terms);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Tensor product of two observables; `low` acts on the lower qubits.
  static PauliObservable tensor(const PauliObservable& low, const PauliObservable& high);

 private:
  int num_qubits_;
  std::vector<Term> terms_;
};

/// Exact <psi|O|psi> from amplitudes.
double expectation(const StateVector& state, const PauliObservable& obs);

}  // namespace qnv

#endif  // QNV_PAULI_H_
