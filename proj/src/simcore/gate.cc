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

#include "qnv/gate.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qnv {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const Amplitude kI(0.0, 1.0);

void check_distinct(std::span<const int> qubits) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] < 0) {
      throw std::invalid_argument("gate qubit index must be non-negative");
    }
    for (std::size_t j = i + 1; j < qubits.size(); ++j) {
      if (qubits[i] == qubits[j]) {
        throw std::invalid_argument("gate qubit indices must be distinct");
      }
    }
  }
}

std::vector<Amplitude> identity_matrix(std::size_t dim) {
  std::vector<Amplitude> m(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) m[i * dim + i] = 1.0;
  return m;
}

std::vector<Amplitude> dagger(std::span<const Amplitude> m, std::size_t dim) {
  std::vector<Amplitude> out(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) out[c * dim + r] = std::conj(m[r * dim + c]);
  }
  return out;
}

}  // namespace

std::string gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::kH: return "H";
    case GateKind::kX: return "X";
    case GateKind::kY: return "Y";
    case GateKind::kZ: return "Z";
    case GateKind::kS: return "S";
    case GateKind::kSdag: return "SDG";
    case GateKind::kPhase: return "P";
    case GateKind::kCnot: return "CNOT";
    case GateKind::kCphase: return "CPHASE";
    case GateKind::kCswap: return "CSWAP";
    case GateKind::kToffoli: return "TOFFOLI";
    case GateKind::kSwap: return "SWAP";
    case GateKind::kUnitary1: return "U1";
    case GateKind::kUnitary: return "U";
  }
  return "?";
}

double unitarity_defect(std::span<const Amplitude> m, std::size_t dim) {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      Amplitude acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) acc += std::conj(m[k * dim + r]) * m[k * dim + c];
      if (r == c) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

Gate::Gate(GateKind kind, std::vector<int> targets, double angle,
           std::vector<Amplitude> matrix)
    : kind_(kind), targets_(std::move(targets)), angle_(angle), custom_(std::move(matrix)) {
  check_distinct(targets_);
}

Gate Gate::h(int q) { return Gate(GateKind::kH, {q}); }
Gate Gate::x(int q) { return Gate(GateKind::kX, {q}); }
Gate Gate::y(int q) { return Gate(GateKind::kY, {q}); }
Gate Gate::z(int q) { return Gate(GateKind::kZ, {q}); }
Gate Gate::s(int q) { return Gate(GateKind::kS, {q}); }
Gate Gate::sdg(int q) { return Gate(GateKind::kSdag, {q}); }
Gate Gate::phase(int q, double phi) { return Gate(GateKind::kPhase, {q}, phi); }
Gate Gate::cnot(int control, int target) { return Gate(GateKind::kCnot, {control, target}); }
Gate Gate::cphase(int a, int b) { return Gate(GateKind::kCphase, {a, b}); }
Gate Gate::cswap(int control, int a, int b) { return Gate(GateKind::kCswap, {control, a, b}); }
Gate Gate::toffoli(int c1, int c2, int target) {
  return Gate(GateKind::kToffoli, {c1, c2, target});
}
Gate Gate::swap(int a, int b) { return Gate(GateKind::kSwap, {a, b}); }

Gate Gate::unitary1(int q, std::vector<Amplitude> matrix) {
  if (matrix.size() != 4) throw std::invalid_argument("unitary1 needs a 2x2 matrix");
  if (unitarity_defect(matrix, 2) >= kUnitarityTolerance) {
    throw std::invalid_argument("unitary1 matrix is not unitary");
  }
  return Gate(GateKind::kUnitary1, {q}, 0.0, std::move(matrix));
}

Gate Gate::unitary(std::vector<int> targets, std::vector<Amplitude> matrix) {
  const int k = static_cast<int>(targets.size());
  if (k < 1 || k > kMaxUnitaryArity) {
    throw std::invalid_argument("arbitrary unitary gates act on 1 to 3 qubits");
  }
  const std::size_t dim = std::size_t{1} << k;
  if (matrix.size() != dim * dim) {
    throw std::invalid_argument("unitary matrix size does not match target count");
  }
  if (unitarity_defect(matrix, dim) >= kUnitarityTolerance) {
    throw std::invalid_argument("unitary matrix is not unitary");
  }
  return Gate(GateKind::kUnitary, std::move(targets), 0.0, std::move(matrix));
}

std::vector<Amplitude> Gate::matrix() const {
  switch (kind_) {
    case GateKind::kH: return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
    case GateKind::kX: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::kY: return {0.0, -kI, kI, 0.0};
    case GateKind::kZ: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::kS: return {1.0, 0.0, 0.0, kI};
    case GateKind::kSdag: return {1.0, 0.0, 0.0, -kI};
    case GateKind::kPhase: return {1.0, 0.0, 0.0, std::polar(1.0, angle_)};
    case GateKind::kCnot: {
      // local bit 0 = control, bit 1 = target
      auto m = identity_matrix(4);
      m[1 * 4 + 1] = 0.0;
      m[3 * 4 + 3] = 0.0;
      m[1 * 4 + 3] = 1.0;
      m[3 * 4 + 1] = 1.0;
      return m;
    }
    case GateKind::kCphase: {
      auto m = identity_matrix(4);
      m[15] = -1.0;
      return m;
    }
    case GateKind::kSwap: {
      auto m = identity_matrix(4);
      m[1 * 4 + 1] = 0.0;
      m[2 * 4 + 2] = 0.0;
      m[1 * 4 + 2] = 1.0;
      m[2 * 4 + 1] = 1.0;
      return m;
    }
    case GateKind::kCswap: {
      // bit 0 = control; swaps bits 1 and 2 when set: |011> <-> |101>
      auto m = identity_matrix(8);
      m[3 * 8 + 3] = 0.0;
      m[5 * 8 + 5] = 0.0;
      m[3 * 8 + 5] = 1.0;
      m[5 * 8 + 3] = 1.0;
      return m;
    }
    case GateKind::kToffoli: {
      // bits 0,1 = controls; flips bit 2: |011> <-> |111>
      auto m = identity_matrix(8);
      m[3 * 8 + 3] = 0.0;
      m[7 * 8 + 7] = 0.0;
      m[3 * 8 + 7] = 1.0;
      m[7 * 8 + 3] = 1.0;
      return m;
    }
    case GateKind::kUnitary1:
    case GateKind::kUnitary:
      return custom_;
  }
  throw std::logic_error("unhandled gate kind");
}

Gate Gate::inverse() const {
  Gate out = *this;
  switch (kind_) {
    case GateKind::kS:
      out.kind_ = GateKind::kSdag;
      break;
    case GateKind::kSdag:
      out.kind_ = GateKind::kS;
      break;
    case GateKind::kPhase:
      out.angle_ = -angle_;
      break;
    case GateKind::kUnitary1:
    case GateKind::kUnitary:
      out.custom_ = dagger(custom_, std::size_t{1} << targets_.size());
      break;
    default:
      break;  // self-inverse
  }
  return out;
}

Gate Gate::controlled(int qubit, bool value) const {
  if (qubit < 0) throw std::invalid_argument("control qubit must be non-negative");
  if (std::find(targets_.begin(), targets_.end(), qubit) != targets_.end()) {
    throw std::invalid_argument("control qubit overlaps gate targets");
  }
  for (const auto& c : controls_) {
    if (c.qubit == qubit) throw std::invalid_argument("duplicate control qubit");
  }
  Gate out = *this;
  out.controls_.push_back({qubit, value});
  return out;
}

Gate Gate::remapped(std::span<const int> mapping) const {
  auto lookup = [&](int q) {
    if (q < 0 || static_cast<std::size_t>(q) >= mapping.size()) {
      throw std::out_of_range("gate qubit outside remapping table");
    }
    return mapping[q];
  };
  Gate out = *this;
  for (auto& t : out.targets_) t = lookup(t);
  for (auto& c : out.controls_) c.qubit = lookup(c.qubit);
  check_distinct(out.targets_);
  return out;
}

int Gate::max_qubit() const {
  int m = *std::max_element(targets_.begin(), targets_.end());
  for (const auto& c : controls_) m = std::max(m, c.qubit);
  return m;
}

std::string Gate::to_string() const {
  std::ostringstream os;
  os << gate_kind_name(kind_);
  if (kind_ == GateKind::kPhase) os << "(" << angle_ << ")";
  for (int t : targets_) os << " " << t;
  for (const auto& c : controls_) os << " c" << (c.value ? "" : "!") << c.qubit;
  return os.str();
}

}  // namespace qnv
