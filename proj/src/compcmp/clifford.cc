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

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

#include "qnv/compcmp.h"

namespace qnv {

namespace {

// Fix the global phase so the first sizable entry is real and positive.
Eigen::Matrix2cd canonical(const Eigen::Matrix2cd& m) {
  for (int k = 0; k < 4; ++k) {
    const auto a = m(k % 2, k / 2);
    if (std::abs(a) > 1e-6) return m * (std::abs(a) / a);
  }
  return m;
}

std::vector<UnitarySpec> build_cliffords() {
  std::vector<UnitarySpec> out;
  std::vector<Eigen::Matrix2cd> seen;
  std::deque<Circuit> queue{Circuit(1)};
  while (!queue.empty()) {
    Circuit c = std::move(queue.front());
    queue.pop_front();
    const Eigen::Matrix2cd m = canonical(dense_unitary(c));
    const bool dup = std::any_of(seen.begin(), seen.end(),
                                 [&](const auto& s) { return (s - m).cwiseAbs().maxCoeff() < 1e-9; });
    if (dup) continue;
    seen.push_back(m);
    std::string word;
    for (const auto& g : c.gates()) word += g.kind() == GateKind::kH ? 'H' : 'S';
    out.emplace_back(c, word.empty() ? "I" : word);
    for (Gate g : {Gate::h(0), Gate::s(0)}) {
      Circuit next = c;
      next.append(g);
      queue.push_back(std::move(next));
    }
  }
  if (out.size() != 24) throw std::logic_error("Clifford enumeration did not close at 24");
  return out;
}

}  // namespace

const std::vector<UnitarySpec>& clifford_group_1q() {
  static const std::vector<UnitarySpec> group = build_cliffords();
  return group;
}

UnitarySpec random_clifford_circuit(int n, int depth, RandomSource& rng) {
  if (n < 1) throw std::invalid_argument("random circuit needs n >= 1");
  if (depth < 0) throw std::invalid_argument("circuit depth must be non-negative");
  const auto& group = clifford_group_1q();
  Circuit c(n);
  std::vector<int> order(n);
  for (int layer = 0; layer < depth; ++layer) {
    for (int q = 0; q < n; ++q) {
      const auto& word = group[rng.below(group.size())].circuit;
      for (const auto& g : word.gates()) c.append(g.kind() == GateKind::kH ? Gate::h(q) : Gate::s(q));
    }
    for (int q = 0; q < n; ++q) order[q] = q;
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    for (int i = 0; i + 1 < n; i += 2) {
      if (rng.below(2)) {
        c.append(Gate::cnot(order[i], order[i + 1]));
      } else {
        c.append(Gate::cnot(order[i + 1], order[i]));
      }
    }
  }
  return UnitarySpec(std::move(c), "clifford");
}

namespace {

// Haar-random 2x2 unitary from a normalized complex Gaussian 4-vector.
std::vector<Amplitude> haar_2x2(RandomSource& rng) {
  double v[4];
  double norm = 0.0;
  for (double& x : v) {
    x = rng.normal();
    norm += x * x;
  }
  norm = std::sqrt(norm);
  const Amplitude a(v[0] / norm, v[1] / norm), b(v[2] / norm, v[3] / norm);
  const Amplitude phase = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
  return {a, -std::conj(b) * phase, b, std::conj(a) * phase};
}

}  // namespace

UnitarySpec random_unitary_circuit(int n, int depth, RandomSource& rng) {
  if (n < 1) throw std::invalid_argument("random circuit needs n >= 1");
  Circuit c(n);
  for (int layer = 0; layer < depth; ++layer) {
    for (int q = 0; q < n; ++q) c.append(Gate::unitary1(q, haar_2x2(rng)));
    for (int q = 0; q + 1 < n; ++q) c.append(Gate::cnot(q, q + 1));
  }
  return UnitarySpec(std::move(c), "random");
}

UnitarySpec random_rotation_layer(int n, double max_angle, RandomSource& rng) {
  if (n < 1) throw std::invalid_argument("rotation layer needs n >= 1");
  Circuit c(n);
  for (int q = 0; q < n; ++q) {
    // exp(-i theta/2 n.sigma) about a uniform random axis
    double ax[3], norm = 0.0;
    for (double& x : ax) {
      x = rng.normal();
      norm += x * x;
    }
    norm = std::sqrt(norm);
    for (double& x : ax) x /= norm;
    const double theta = max_angle * rng.uniform();
    const double cs = std::cos(theta / 2), sn = std::sin(theta / 2);
    const Amplitude i(0.0, 1.0);
    c.append(Gate::unitary1(q, {cs - i * sn * ax[2], (-i * ax[0] - ax[1]) * sn,
                                (-i * ax[0] + ax[1]) * sn, cs + i * sn * ax[2]}));
  }
  return UnitarySpec(std::move(c), "rotations");
}

UnitarySpec phase_after_hadamard(double phi) {
  Circuit c(1);
  c.append(Gate::h(0));
  c.append(Gate::phase(0, phi));
  return UnitarySpec(std::move(c), "P*H");
}

}  // namespace qnv
