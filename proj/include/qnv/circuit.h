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

#ifndef QNV_CIRCUIT_H_
#define QNV_CIRCUIT_H_

#include <span>
#include <string>
#include <vector>

#include "qnv/gate.h"
#include "qnv/state_vector.h"

namespace qnv {

/// Ordered gate list on a fixed number of qubits.
class Circuit {
 public:
  explicit Circuit(int num_qubits = 0) : num_qubits_(num_qubits) {}
  Circuit(int num_qubits, std::vector<Gate> gates);

  int num_qubits() const { return num_qubits_; }
  std::span<const Gate> gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  Circuit& append(Gate gate);
  Circuit& append(const Circuit& other);

  /// Applies every gate in order to `state`. `offset` shifts all qubit
  /// indices, so an n-qubit circuit can act on a slice of a larger register.
  void apply_to(StateVector& state, int offset = 0) const;
  /// Runs the circuit on |0...0>.
  StateVector prepare() const;

  Circuit inverse() const;
  /// Each gate gains the control condition (qubit == value). The result lives
  /// on max(num_qubits, qubit + 1) qubits.
  Circuit controlled(int qubit, bool value = true) const;
  /// Relabels qubits through `mapping`; the result has `new_size` qubits.
  Circuit remapped(std::span<const int> mapping, int new_size) const;
  Circuit shifted(int offset, int new_size) const;

  std::string to_string() const;

 private:
  int num_qubits_;
  std::vector<Gate> gates_;
};

}  // namespace qnv

#endif  // QNV_CIRCUIT_H_
