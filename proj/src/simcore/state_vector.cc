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

#include "qnv/state_vector.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qnv {

namespace {

void check_qubit(const StateVector& s, int q) {
  if (q < 0 || q >= s.num_qubits()) {
    throw std::out_of_range("qubit index " + std::to_string(q) + " outside register of " +
                            std::to_string(s.num_qubits()));
  }
}

void check_distinct_qubits(const StateVector& s, std::span<const int> qubits) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    check_qubit(s, qubits[i]);
    for (std::size_t j = i + 1; j < qubits.size(); ++j) {
      if (qubits[i] == qubits[j]) throw std::invalid_argument("repeated qubit index");
    }
  }
}

// Sets amps[i] for i in the 2^k-dimensional block spanned by `offsets` on
// top of `base`.
void apply_dense(std::vector<Amplitude>& amps, std::size_t base,
                 std::span<const std::size_t> offsets, std::span<const Amplitude> m,
                 std::span<Amplitude> scratch) {
  const std::size_t dim = offsets.size();
  for (std::size_t r = 0; r < dim; ++r) scratch[r] = amps[base | offsets[r]];
  for (std::size_t r = 0; r < dim; ++r) {
    Amplitude acc = 0.0;
    const Amplitude* row = &m[r * dim];
    for (std::size_t c = 0; c < dim; ++c) acc += row[c] * scratch[c];
    amps[base | offsets[r]] = acc;
  }
}

}  // namespace

StateVector StateVector::zero(int num_qubits, int max_qubits) {
  if (num_qubits < 1 || num_qubits > max_qubits) {
    throw std::out_of_range("state size " + std::to_string(num_qubits) +
                            " outside [1, " + std::to_string(max_qubits) + "]");
  }
  std::vector<Amplitude> amps(std::size_t{1} << num_qubits, 0.0);
  amps[0] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
  StateVector s = zero(num_qubits);
  if (index >= s.dim()) throw std::out_of_range("basis index outside register");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
  const std::size_t size = amplitudes.size();
  if (size < 2 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("amplitude count must be a power of two >= 2");
  }
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  if (n > kDefaultMaxQubits) throw std::out_of_range("state exceeds qubit cap");
  StateVector s(n, std::move(amplitudes));
  if (std::abs(s.norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("amplitudes are not normalized");
  }
  return s;
}

StateVector StateVector::random(int num_qubits, RandomSource& rng) {
  StateVector s = zero(num_qubits);
  for (auto& a : s.amps_) a = Amplitude(rng.normal(), rng.normal());
  s.renormalize();
  return s;
}

StateVector StateVector::tensor(const StateVector& low, const StateVector& high) {
  const int n = low.num_qubits_ + high.num_qubits_;
  if (n > kDefaultMaxQubits) throw std::out_of_range("tensor product exceeds qubit cap");
  std::vector<Amplitude> amps(std::size_t{1} << n);
  for (std::size_t h = 0; h < high.dim(); ++h) {
    for (std::size_t l = 0; l < low.dim(); ++l) {
      amps[(h << low.num_qubits_) | l] = high.amps_[h] * low.amps_[l];
    }
  }
  return StateVector(n, std::move(amps));
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

void StateVector::renormalize() {
  const double n = norm();
  if (n == 0.0) throw std::runtime_error("cannot renormalize the zero vector");
  const double inv = 1.0 / n;
  for (auto& a : amps_) a *= inv;
}

double StateVector::probability_one(int qubit) const {
  check_qubit(*this, qubit);
  const std::size_t bit = std::size_t{1} << qubit;
  double p = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) p += std::norm(amps_[i]);
  }
  return p;
}

void StateVector::apply(const Gate& gate) {
  const auto targets = gate.targets();
  check_distinct_qubits(*this, targets);
  std::size_t control_mask = 0;
  std::size_t control_value = 0;
  for (const auto& c : gate.controls()) {
    check_qubit(*this, c.qubit);
    const std::size_t bit = std::size_t{1} << c.qubit;
    control_mask |= bit;
    if (c.value) control_value |= bit;
  }
  auto bit_of = [&](int j) { return std::size_t{1} << targets[j]; };
  const std::size_t size = amps_.size();
  auto active = [&](std::size_t i) { return (i & control_mask) == control_value; };

  switch (gate.kind()) {
    case GateKind::kX:
    case GateKind::kCnot:
    case GateKind::kToffoli: {
      // Flip the last target when every preceding target (and control) is set.
      const std::size_t flip = bit_of(gate.arity() - 1);
      std::size_t need = 0;
      for (int j = 0; j + 1 < gate.arity(); ++j) need |= bit_of(j);
      const std::size_t mask = control_mask | need;
      const std::size_t value = control_value | need;
      for (std::size_t i = 0; i < size; ++i) {
        if ((i & flip) || (i & mask) != value) continue;
        std::swap(amps_[i], amps_[i | flip]);
      }
      return;
    }
    case GateKind::kSwap:
    case GateKind::kCswap: {
      const int first = gate.kind() == GateKind::kCswap ? 1 : 0;
      const std::size_t a = bit_of(first);
      const std::size_t b = bit_of(first + 1);
      const std::size_t mask = control_mask | (first ? bit_of(0) : 0);
      const std::size_t value = control_value | (first ? bit_of(0) : 0);
      for (std::size_t i = 0; i < size; ++i) {
        if (!(i & a) || (i & b) || (i & mask) != value) continue;
        std::swap(amps_[i], amps_[i ^ a ^ b]);
      }
      return;
    }
    case GateKind::kZ:
    case GateKind::kS:
    case GateKind::kSdag:
    case GateKind::kPhase:
    case GateKind::kCphase: {
      Amplitude phase = -1.0;
      if (gate.kind() == GateKind::kS) phase = Amplitude(0.0, 1.0);
      if (gate.kind() == GateKind::kSdag) phase = Amplitude(0.0, -1.0);
      if (gate.kind() == GateKind::kPhase) phase = std::polar(1.0, gate.angle());
      std::size_t need = 0;
      for (int j = 0; j < gate.arity(); ++j) need |= bit_of(j);
      const std::size_t mask = control_mask | need;
      const std::size_t value = control_value | need;
      for (std::size_t i = 0; i < size; ++i) {
        if ((i & mask) == value) amps_[i] *= phase;
      }
      return;
    }
    default:
      break;
  }

  const std::vector<Amplitude> m = gate.matrix();
  const std::size_t k = targets.size();
  const std::size_t dim = std::size_t{1} << k;

  if (k == 1) {
    const std::size_t bit = bit_of(0);
    const Amplitude m00 = m[0], m01 = m[1], m10 = m[2], m11 = m[3];
    if (control_mask == 0) {
      for (std::size_t base = 0; base < size; base += 2 * bit) {
        for (std::size_t i = base; i < base + bit; ++i) {
          const Amplitude a0 = amps_[i];
          const Amplitude a1 = amps_[i | bit];
          amps_[i] = m00 * a0 + m01 * a1;
          amps_[i | bit] = m10 * a0 + m11 * a1;
        }
      }
      return;
    }
    for (std::size_t i = 0; i < size; ++i) {
      if ((i & bit) || !active(i)) continue;
      const Amplitude a0 = amps_[i];
      const Amplitude a1 = amps_[i | bit];
      amps_[i] = m00 * a0 + m01 * a1;
      amps_[i | bit] = m10 * a0 + m11 * a1;
    }
    return;
  }

  std::size_t target_mask = 0;
  std::vector<std::size_t> offsets(dim, 0);
  for (std::size_t j = 0; j < k; ++j) target_mask |= bit_of(static_cast<int>(j));
  for (std::size_t local = 0; local < dim; ++local) {
    for (std::size_t j = 0; j < k; ++j) {
      if (local & (std::size_t{1} << j)) offsets[local] |= bit_of(static_cast<int>(j));
    }
  }
  Amplitude scratch[8];
  for (std::size_t i = 0; i < size; ++i) {
    if ((i & target_mask) || !active(i)) continue;
    apply_dense(amps_, i, offsets, m, std::span<Amplitude>(scratch, dim));
  }
}

std::uint64_t measure(StateVector& state, std::span<const int> qubits, RandomSource& rng) {
  check_distinct_qubits(state, qubits);
  if (qubits.size() > 64) throw std::invalid_argument("at most 64 qubits per measurement");
  auto amps = state.mutable_amplitudes();

  // Draw a full basis index from the Born distribution; its restriction to
  // `qubits` has the correct marginal.
  const double total = [&] {
    double t = 0.0;
    for (const auto& a : amps) t += std::norm(a);
    return t;
  }();
  const double r = rng.uniform() * total;
  double acc = 0.0;
  std::size_t chosen = amps.size();
  std::size_t last_possible = 0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p < kImpossibleBranch * kImpossibleBranch) continue;
    last_possible = i;
    acc += p;
    if (r < acc) {
      chosen = i;
      break;
    }
  }
  if (chosen == amps.size()) chosen = last_possible;

  std::size_t mask = 0;
  std::uint64_t bits = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    const std::size_t bit = std::size_t{1} << qubits[j];
    mask |= bit;
    if (chosen & bit) bits |= std::uint64_t{1} << j;
  }
  const std::size_t pattern = chosen & mask;

  // Guard against landing on a branch the Born rule deems impossible.
  double kept = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & mask) == pattern) kept += std::norm(amps[i]);
  }
  if (kept < kImpossibleBranch) {
    throw std::runtime_error("measurement sampled an impossible branch");
  }
  const double inv = 1.0 / std::sqrt(kept);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & mask) == pattern) {
      amps[i] *= inv;
    } else {
      amps[i] = 0.0;
    }
  }
  return bits;
}

int measure_qubit(StateVector& state, int qubit, RandomSource& rng) {
  const int q[1] = {qubit};
  return static_cast<int>(measure(state, q, rng));
}

int reset_qubit(StateVector& state, int qubit, RandomSource& rng) {
  const int bit = measure_qubit(state, qubit, rng);
  if (bit) state.apply(Gate::x(qubit));
  return bit;
}

std::vector<double> marginal_probabilities(const StateVector& state,
                                           std::span<const int> qubits) {
  check_distinct_qubits(state, qubits);
  if (qubits.size() > 24) throw std::invalid_argument("too many qubits for a marginal table");
  std::vector<double> out(std::size_t{1} << qubits.size(), 0.0);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      if (i & (std::size_t{1} << qubits[j])) idx |= std::size_t{1} << j;
    }
    out[idx] += std::norm(amps[i]);
  }
  return out;
}

Amplitude overlap(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("overlap of states with different qubit counts");
  }
  Amplitude acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

}  // namespace qnv
