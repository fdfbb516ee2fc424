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

#include <cmath>
#include <stdexcept>

#include "qnv/compcmp.h"

namespace qnv {

namespace {

// Re-attach the control conditions of `from` to `g`.
Gate with_controls(Gate g, const Gate& from) {
  for (const auto& c : from.controls()) g = g.controlled(c.qubit, c.value);
  return g;
}

Gate conjugate_gate(const Gate& g) {
  const auto t = g.targets();
  switch (g.kind()) {
    case GateKind::kS:
      return with_controls(Gate::sdg(t[0]), g);
    case GateKind::kSdag:
      return with_controls(Gate::s(t[0]), g);
    case GateKind::kPhase:
      return with_controls(Gate::phase(t[0], -g.angle()), g);
    case GateKind::kY:
    case GateKind::kUnitary1:
    case GateKind::kUnitary: {
      auto m = g.matrix();
      for (auto& a : m) a = std::conj(a);
      return with_controls(Gate::unitary(std::vector<int>(t.begin(), t.end()), std::move(m)), g);
    }
    default:
      return g;  // real matrix
  }
}

}  // namespace

UnitarySpec::UnitarySpec(Circuit c, std::string name)
    : circuit(std::move(c)), label(std::move(name)) {}

Eigen::MatrixXcd UnitarySpec::matrix() const { return dense_unitary(circuit); }

UnitarySpec UnitarySpec::adjoint() const { return UnitarySpec(circuit.inverse(), label + "^dag"); }

UnitarySpec UnitarySpec::conjugate() const {
  Circuit out(circuit.num_qubits());
  for (const auto& g : circuit.gates()) out.append(conjugate_gate(g));
  return UnitarySpec(std::move(out), label + "^*");
}

UnitarySpec UnitarySpec::transpose() const {
  UnitarySpec t = adjoint().conjugate();
  t.label = label + "^T";
  return t;
}

UnitarySpec UnitarySpec::then(const UnitarySpec& next) const {
  if (next.num_qubits() != num_qubits()) {
    throw std::invalid_argument("composed unitaries act on different qubit counts");
  }
  Circuit c = circuit;
  c.append(next.circuit);
  return UnitarySpec(std::move(c), next.label + "*" + label);
}

Eigen::MatrixXcd dense_unitary(const Circuit& circuit) {
  const int n = circuit.num_qubits();
  if (n > 12) throw std::out_of_range("dense unitary limited to 12 qubits");
  const std::size_t d = std::size_t{1} << n;
  Eigen::MatrixXcd m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    StateVector s = StateVector::basis(n, j);
    circuit.apply_to(s);
    for (std::size_t i = 0; i < d; ++i) m(i, j) = s[i];
  }
  return m;
}

namespace {

void check_same_size(const UnitarySpec& a, const UnitarySpec& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("compared unitaries act on different qubit counts");
  }
}

}  // namespace

std::complex<double> normalized_trace(const UnitarySpec& u_l, const UnitarySpec& u_r) {
  check_same_size(u_l, u_r);
  return (u_l.matrix().adjoint() * u_r.matrix()).trace() / static_cast<double>(u_l.dim());
}

std::complex<double> normalized_conjugate_trace(const UnitarySpec& u_l, const UnitarySpec& u_r) {
  check_same_size(u_l, u_r);
  return (u_l.matrix().conjugate() * u_r.matrix()).trace() / static_cast<double>(u_l.dim());
}

double process_fidelity(const UnitarySpec& u_l, const UnitarySpec& u_r) {
  return std::norm(normalized_trace(u_l, u_r));
}

double average_fidelity_from_process(double f_p, std::size_t d) {
  const double dd = static_cast<double>(d);
  return (dd * f_p + 1.0) / (dd + 1.0);
}

double fsq_dense(const UnitarySpec& u_l, const UnitarySpec& u_r) {
  check_same_size(u_l, u_r);
  const Eigen::MatrixXcd w = u_l.matrix().adjoint() * u_r.matrix();
  double sum = 0.0;
  for (Eigen::Index p = 0; p < w.rows(); ++p) sum += std::norm(w(p, p));
  return sum / static_cast<double>(w.rows());
}

double chsh_dense(const UnitarySpec& u_l, const UnitarySpec& u_r) {
  if (u_l.num_qubits() != 1 || u_r.num_qubits() != 1) {
    throw std::invalid_argument("CHSH test compares single-qubit unitaries");
  }
  using M2 = Eigen::Matrix2cd;
  M2 z, x;
  z << 1, 0, 0, -1;
  x << 0, 1, 1, 0;
  const double r = 1.0 / std::sqrt(2.0);
  const M2 a0 = r * (z - x), a1 = r * (x + z);
  // qubit 0 (A side) is the low bit, so A sits on the right of each kron
  auto kron = [](const M2& hi, const M2& lo) {
    Eigen::Matrix4cd k;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = hi(i, j) * lo;
    return k;
  };
  const Eigen::Matrix4cd s = kron(z, a0) - kron(x, a0) + kron(z, a1) + kron(x, a1);
  Eigen::Vector4cd phi = Eigen::Vector4cd::Zero();
  phi(0) = phi(3) = r;
  const M2 ul = u_l.matrix(), ur = u_r.matrix();
  const Eigen::Vector4cd psi = kron(ur, ul) * phi;
  return (psi.adjoint() * s * psi)(0, 0).real();
}

double second_frame_potential(const std::vector<Eigen::MatrixXcd>& unitaries) {
  if (unitaries.size() < 2) throw std::invalid_argument("frame potential needs two unitaries");
  double sum = 0.0;
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    const auto& a = unitaries[i];
    const auto& b = unitaries[(i + 1) % unitaries.size()];
    const double t = std::norm((a.adjoint() * b).trace());
    sum += t * t;
  }
  return sum / static_cast<double>(unitaries.size());
}

}  // namespace qnv
