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

#include "qnv/circuit.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qnv {

Circuit::Circuit(int num_qubits, std::vector<Gate> gates) : num_qubits_(num_qubits) {
  for (auto& g : gates) append(std::move(g));
}

Circuit& Circuit::append(Gate gate) {
  if (gate.max_qubit() >= num_qubits_) {
    throw std::out_of_range("gate " + gate.to_string() + " outside " +
                            std::to_string(num_qubits_) + "-qubit circuit");
  }
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.num_qubits_ > num_qubits_) {
    throw std::out_of_range("appended circuit is wider than the target");
  }
  for (const auto& g : other.gates_) gates_.push_back(g);
  return *this;
}

void Circuit::apply_to(StateVector& state, int offset) const {
  if (offset < 0 || offset + num_qubits_ > state.num_qubits()) {
    throw std::out_of_range("circuit does not fit in the register at this offset");
  }
  if (offset == 0) {
    for (const auto& g : gates_) state.apply(g);
    return;
  }
  std::vector<int> mapping(num_qubits_);
  std::iota(mapping.begin(), mapping.end(), offset);
  for (const auto& g : gates_) state.apply(g.remapped(mapping));
}

StateVector Circuit::prepare() const {
  StateVector s = StateVector::zero(num_qubits_);
  apply_to(s);
  return s;
}

Circuit Circuit::inverse() const {
  Circuit out(num_qubits_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(it->inverse());
  return out;
}

Circuit Circuit::controlled(int qubit, bool value) const {
  Circuit out(std::max(num_qubits_, qubit + 1));
  for (const auto& g : gates_) out.gates_.push_back(g.controlled(qubit, value));
  return out;
}

Circuit Circuit::remapped(std::span<const int> mapping, int new_size) const {
  Circuit out(new_size);
  for (const auto& g : gates_) out.append(g.remapped(mapping));
  return out;
}

Circuit Circuit::shifted(int offset, int new_size) const {
  std::vector<int> mapping(num_qubits_);
  std::iota(mapping.begin(), mapping.end(), offset);
  return remapped(mapping, new_size);
}

std::string Circuit::to_string() const {
  std::ostringstream os;
  os << "circuit(" << num_qubits_ << ")";
  for (const auto& g : gates_) os << "; " << g.to_string();
  return os.str();
}

}  // namespace qnv
