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

#include "qnv/overlap.h"

#include <bit>
#include <numeric>
#include <stdexcept>

#include "qnv/parallel.h"

namespace qnv {

namespace {

void check_pair(const StateVector& psi, const StateVector& psi_tilde) {
  if (psi.num_qubits() != psi_tilde.num_qubits()) {
    throw std::invalid_argument("overlap test on registers of different size");
  }
  if (psi.num_qubits() > 32) throw std::out_of_range("overlap test register too wide");
}

// Gate error plus damping charged to one finished block.
void block_noise(StateVector& s, std::span<const int> qubits, const NoiseBudget& b,
                 RandomSource& rng) {
  if (b.f_gate < 1.0 && rng.bernoulli(1.0 - b.f_gate)) {
    for (int q : qubits) apply_random_pauli(s, q, rng);
  }
  if (b.decay_exponent() > 0.0) {
    for (int q : qubits) apply_amplitude_damping(s, q, b.gamma, b.t_block, rng);
  }
}

void gate_with_noise(StateVector& s, const Gate& g, const LocalNoise* noise,
                     RandomSource& rng) {
  if (noise && noise->per_gate) {
    noisy_gate(s, g, noise->budget.f_gate, rng);
  } else {
    s.apply(g);
  }
}

StateVector swap_test_circuit_state(const StateVector& psi, const StateVector& psi_tilde,
                                    const LocalNoise* noise, RandomSource& rng) {
  const int n = psi.num_qubits();
  const int anc = 2 * n;
  StateVector s = StateVector::tensor(StateVector::tensor(psi, psi_tilde),
                                      StateVector::zero(1));
  gate_with_noise(s, Gate::h(anc), noise, rng);
  for (int k = 0; k < n; ++k) {
    gate_with_noise(s, Gate::cswap(anc, k, n + k), noise, rng);
    if (noise && !noise->per_gate) {
      const int qs[3] = {anc, k, n + k};
      block_noise(s, qs, noise->budget, rng);
    } else if (noise && noise->budget.decay_exponent() > 0.0) {
      const int qs[3] = {anc, k, n + k};
      for (int q : qs) apply_amplitude_damping(s, q, noise->budget.gamma, noise->budget.t_block, rng);
    }
  }
  gate_with_noise(s, Gate::h(anc), noise, rng);
  return s;
}

StateVector bell_test_circuit_state(const StateVector& psi, const StateVector& psi_tilde,
                                    const LocalNoise* noise, RandomSource& rng) {
  const int n = psi.num_qubits();
  StateVector s = StateVector::tensor(psi, psi_tilde);
  for (int k = 0; k < n; ++k) {
    gate_with_noise(s, Gate::cnot(n + k, k), noise, rng);
    gate_with_noise(s, Gate::h(n + k), noise, rng);
    if (noise && !noise->per_gate) {
      const int qs[2] = {k, n + k};
      block_noise(s, qs, noise->budget, rng);
    } else if (noise && noise->budget.decay_exponent() > 0.0) {
      const int qs[2] = {k, n + k};
      for (int q : qs) apply_amplitude_damping(s, q, noise->budget.gamma, noise->budget.t_block, rng);
    }
  }
  return s;
}

TrialRecord swap_record(int bit) {
  TrialRecord r;
  r.ancilla_bit = bit;
  r.pass = bit == 0;
  return r;
}

TrialRecord bell_record(std::uint64_t b, std::uint64_t c) {
  TrialRecord r;
  r.bitstrings = std::make_pair(b, c);
  r.pass = parity_rule_passes(b, c);
  return r;
}

std::vector<int> iota_vec(int begin, int end) {
  std::vector<int> v(end - begin);
  std::iota(v.begin(), v.end(), begin);
  return v;
}

// Outcome table with numerically impossible branches removed.
std::vector<double> clean_cdf(std::vector<double> probs) {
  for (auto& p : probs) {
    if (p < kImpossibleBranch) p = 0.0;
  }
  return cumulative(probs);
}

}  // namespace

std::string overlap_test_name(OverlapTest test) {
  return test == OverlapTest::kSwap ? "swap" : "bell";
}

OverlapTest parse_overlap_test(const std::string& name) {
  if (name == "swap") return OverlapTest::kSwap;
  if (name == "bell") return OverlapTest::kBell;
  throw std::invalid_argument("unknown overlap test '" + name + "' (expected swap|bell)");
}

bool parity_rule_passes(std::uint64_t b, std::uint64_t c) {
  return (std::popcount(b & c) & 1) == 0;
}

TrialRecord swap_test_shot(const StateVector& psi, const StateVector& psi_tilde,
                           const LocalNoise* noise, RandomSource& rng) {
  check_pair(psi, psi_tilde);
  if (noise) noise->budget.validate();
  StateVector s = swap_test_circuit_state(psi, psi_tilde, noise, rng);
  int bit = measure_qubit(s, 2 * psi.num_qubits(), rng);
  if (noise) bit = flip_readout(bit, noise->budget.f_readout, rng);
  return swap_record(bit);
}

TrialRecord bell_test_shot(const StateVector& psi, const StateVector& psi_tilde,
                           const LocalNoise* noise, RandomSource& rng) {
  check_pair(psi, psi_tilde);
  if (noise) noise->budget.validate();
  const int n = psi.num_qubits();
  StateVector s = bell_test_circuit_state(psi, psi_tilde, noise, rng);
  const auto all = iota_vec(0, 2 * n);
  const std::uint64_t bits = measure(s, all, rng);
  std::uint64_t b = bits & ((std::uint64_t{1} << n) - 1);
  std::uint64_t c = bits >> n;
  if (noise && noise->budget.f_readout < 1.0) {
    for (int k = 0; k < n; ++k) {
      b ^= static_cast<std::uint64_t>(flip_readout(0, noise->budget.f_readout, rng)) << k;
      c ^= static_cast<std::uint64_t>(flip_readout(0, noise->budget.f_readout, rng)) << k;
    }
  }
  return bell_record(b, c);
}

std::vector<TrialRecord> run_overlap_test(OverlapTest test, const StateVector& psi,
                                          const StateVector& psi_tilde, std::size_t shots,
                                          const LocalNoise* noise, RandomSource& rng) {
  check_pair(psi, psi_tilde);
  std::vector<TrialRecord> out(shots);
  RandomSource base = rng.fork();
  const bool noiseless = noise == nullptr || noise->budget.is_ideal();
  const int n = psi.num_qubits();

  if (noiseless) {
    RandomSource unused(0, 0);
    if (test == OverlapTest::kSwap) {
      const StateVector s = swap_test_circuit_state(psi, psi_tilde, nullptr, unused);
      const int anc[1] = {2 * n};
      const auto cdf = clean_cdf(marginal_probabilities(s, anc));
      for (std::size_t i = 0; i < shots; ++i) {
        out[i] = swap_record(static_cast<int>(sample_cdf(cdf, base)));
      }
    } else {
      const StateVector s = bell_test_circuit_state(psi, psi_tilde, nullptr, unused);
      std::vector<double> probs(s.dim());
      for (std::size_t i = 0; i < s.dim(); ++i) probs[i] = std::norm(s[i]);
      const auto cdf = clean_cdf(std::move(probs));
      const std::uint64_t low = (std::uint64_t{1} << n) - 1;
      for (std::size_t i = 0; i < shots; ++i) {
        const std::uint64_t bits = sample_cdf(cdf, base);
        out[i] = bell_record(bits & low, bits >> n);
      }
    }
    return out;
  }

  parallel_for(shots, [&](std::size_t i) {
    RandomSource shot_rng = base.child(i);
    out[i] = test == OverlapTest::kSwap ? swap_test_shot(psi, psi_tilde, noise, shot_rng)
                                        : bell_test_shot(psi, psi_tilde, noise, shot_rng);
  });
  return out;
}

double exact_pass_probability(const StateVector& psi, const StateVector& psi_tilde) {
  return 0.5 * (1.0 + std::norm(overlap(psi, psi_tilde)));
}

std::size_t count_passes(std::span<const TrialRecord> records) {
  std::size_t passes = 0;
  for (const auto& r : records) passes += r.pass ? 1 : 0;
  return passes;
}

double fidelity_from_counts(std::size_t passes, std::size_t shots) {
  if (shots == 0) throw std::invalid_argument("fidelity estimate needs at least one shot");
  if (passes > shots) throw std::invalid_argument("more passes than shots");
  return 2.0 * static_cast<double>(passes) / static_cast<double>(shots) - 1.0;
}

double estimate_fidelity(std::span<const TrialRecord> records) {
  return fidelity_from_counts(count_passes(records), records.size());
}

}  // namespace qnv
