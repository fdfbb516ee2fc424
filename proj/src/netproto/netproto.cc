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

#include "qnv/netproto.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "qnv/parallel.h"

namespace qnv {

namespace {

constexpr double kStorageTolerance = 1e-10;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Mutable per-shot state shared by the three executors.
struct Shot {
  StateVector state;
  const NoiseBudget& noise;
  const ProtocolOptions& options;
  RandomSource& rng;
  ChannelLedger ledger;
  std::vector<ProtocolEvent> events;
  int errors = 0;

  void log(int block, const char* kind, bool error = false) {
    if (error) ++errors;
    if (options.trace) events.push_back({block, kind, ledger.uses(), error});
  }

  void crossing(int block, int from, int to) {
    const bool err = transmit(state, from, to, ledger, noise, options.damping, rng);
    log(block, "transmit", err);
  }

  // A qubit that physically travels and comes back to the same slot.
  void fly(int block, int qubit) {
    ledger.record_crossing();
    bool err = apply_depolarizing(state, qubit, 1.0 - noise.f_transfer, rng);
    if (options.damping == DampingMode::kPerCrossing) {
      err |= apply_amplitude_damping(state, qubit, noise.gamma, noise.t_block, rng);
    }
    log(block, "transmit", err);
  }

  void gate(int block, const Gate& g) {
    state.apply(g);
    log(block, "gate");
  }

  // One gate-error draw for a whole block.
  void block_error(int block, std::initializer_list<int> qubits) {
    if (noise.f_gate < 1.0 && rng.bernoulli(1.0 - noise.f_gate)) {
      for (int q : qubits) apply_random_pauli(state, q, rng);
      log(block, "gate", true);
    }
  }

  void idle(int block, int first, int last) {
    if (options.damping != DampingMode::kAllStationary) return;
    if (noise.decay_exponent() == 0.0) return;
    for (int q = first; q < last; ++q) {
      const bool err = apply_amplitude_damping(state, q, noise.gamma, noise.t_block, rng);
      log(block, "idle", err);
    }
  }

  int read(int block, int qubit) {
    const int raw = measure_qubit(state, qubit, rng);
    const int bit = flip_readout(raw, noise.f_readout, rng);
    log(block, "measure", raw != bit);
    return bit;
  }

  // Two-bit readout of one Bell-measurement block as a single event.
  std::pair<int, int> read_pair(int block, int first, int second) {
    int a = measure_qubit(state, first, rng);
    int b = measure_qubit(state, second, rng);
    const bool err = flip_readout(0, noise.f_readout, rng) == 1;
    if (err) {
      if (rng.below(2) == 0) {
        a ^= 1;
      } else {
        b ^= 1;
      }
    }
    log(block, "measure", err);
    return {a, b};
  }
};

void check_inputs(const StateVector& a, const StateVector& b, const NoiseBudget& noise) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("node registers hold different qubit counts");
  }
  if (a.num_qubits() > 62) throw std::out_of_range("too many data qubits");
  noise.validate();
}

// Initial register: psi_a on [0, n), psi_b on [n, 2n), ancillas in |0>.
StateVector initial_register(const StateVector& a, const StateVector& b, int ancillas) {
  StateVector s = StateVector::tensor(a, b);
  if (ancillas > 0) s = StateVector::tensor(s, StateVector::zero(ancillas));
  return s;
}

template <typename ShotFn>
ProtocolRun run_shots(const StateVector& init, std::size_t shots, const NoiseBudget& noise,
                      const ProtocolOptions& options, RandomSource& rng, ShotFn fn) {
  ProtocolRun run;
  run.records.resize(shots);
  if (options.trace) run.traces.resize(shots);
  RandomSource base = rng.fork();
  parallel_for(shots, [&](std::size_t i) {
    RandomSource shot_rng = base.child(i);
    Shot shot{init, noise, options, shot_rng, {}, {}};
    TrialRecord rec = fn(shot);
    rec.channel_uses = shot.ledger.uses();
    rec.error_events = shot.errors;
    run.records[i] = rec;
    if (options.trace) run.traces[i] = std::move(shot.events);
  });
  return run;
}

}  // namespace

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::kS1: return "s1";
    case Scheme::kS2: return "s2";
    case Scheme::kS3: return "s3";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  const std::string s = lower(name);
  if (s == "s1") return Scheme::kS1;
  if (s == "s2") return Scheme::kS2;
  if (s == "s3") return Scheme::kS3;
  throw std::invalid_argument("unknown scheme '" + name + "' (expected s1|s2|s3)");
}

std::string damping_mode_name(DampingMode mode) {
  return mode == DampingMode::kPerCrossing ? "per_crossing" : "all_stationary";
}

DampingMode parse_damping_mode(const std::string& name) {
  if (name == "per_crossing") return DampingMode::kPerCrossing;
  if (name == "all_stationary") return DampingMode::kAllStationary;
  throw std::invalid_argument("unknown damping mode '" + name +
                              "' (expected per_crossing|all_stationary)");
}

bool transmit(StateVector& state, int from, int to, ChannelLedger& ledger,
              const NoiseBudget& noise, DampingMode damping, RandomSource& rng) {
  if (from == to) throw std::invalid_argument("transmit source equals destination");
  if (state.probability_one(to) > kStorageTolerance) {
    throw std::logic_error("transmit destination qubit " + std::to_string(to) +
                           " is not in |0>");
  }
  state.apply(Gate::swap(from, to));
  ledger.record_crossing();
  bool err = apply_depolarizing(state, to, 1.0 - noise.f_transfer, rng);
  if (damping == DampingMode::kPerCrossing) {
    err |= apply_amplitude_damping(state, to, noise.gamma, noise.t_block, rng);
  }
  return err;
}

int scheme_ancilla_count(Scheme scheme) {
  switch (scheme) {
    case Scheme::kS1: return 2;
    case Scheme::kS2: return 1;
    case Scheme::kS3: return 0;
  }
  return 0;
}

int scheme_register_size(Scheme scheme, int n) { return 2 * n + scheme_ancilla_count(scheme); }

int expected_channel_uses(Scheme scheme, int n, bool return_qubits) {
  switch (scheme) {
    case Scheme::kS1: return return_qubits ? 2 * n : n;
    case Scheme::kS2: return n;
    case Scheme::kS3: return 2 * n;
  }
  return 0;
}

ProtocolRun run_s1(const StateVector& psi_a, const StateVector& psi_b, std::size_t shots,
                   const NoiseBudget& noise, const ProtocolOptions& options,
                   RandomSource& rng) {
  check_inputs(psi_a, psi_b, noise);
  const int n = psi_a.num_qubits();
  const int st = 2 * n;
  const int op = 2 * n + 1;
  const StateVector init = initial_register(psi_a, psi_b, 2);
  return run_shots(init, shots, noise, options, rng, [&](Shot& shot) {
    shot.gate(-1, Gate::h(op));
    for (int k = 0; k < n; ++k) {
      shot.crossing(k, k, st);
      shot.gate(k, Gate::cswap(op, st, n + k));
      shot.block_error(k, {op, st, n + k});
      if (options.return_qubits) {
        shot.crossing(k, st, k);
      } else {
        // The used storage qubit stays at B; a fresh one takes its place.
        // Relabelling it into the vacated slot k is free bookkeeping.
        shot.state.apply(Gate::swap(st, k));
      }
      shot.idle(k, 0, 2 * n + 2);
    }
    shot.gate(-1, Gate::h(op));
    const int bit = shot.read(-1, op);
    TrialRecord rec;
    rec.ancilla_bit = bit;
    rec.pass = bit == 0;
    return rec;
  });
}

ProtocolRun run_s2(const StateVector& psi_a, const StateVector& psi_b, std::size_t shots,
                   const NoiseBudget& noise, const ProtocolOptions& options,
                   RandomSource& rng) {
  check_inputs(psi_a, psi_b, noise);
  const int n = psi_a.num_qubits();
  const int st = 2 * n;
  const StateVector init = initial_register(psi_a, psi_b, 1);
  return run_shots(init, shots, noise, options, rng, [&](Shot& shot) {
    std::uint64_t b_bits = 0;
    std::uint64_t c_bits = 0;
    for (int k = 0; k < n; ++k) {
      const int bk = n + k;
      shot.crossing(k, k, st);
      shot.gate(k, Gate::cnot(bk, st));
      shot.gate(k, Gate::h(bk));
      shot.block_error(k, {bk, st});
      const auto [b, c] = shot.read_pair(k, st, bk);
      b_bits |= static_cast<std::uint64_t>(b) << k;
      c_bits |= static_cast<std::uint64_t>(c) << k;
      // Storage collapsed on measurement; bring it back to |0>.
      if (shot.state.probability_one(st) > 0.5) shot.state.apply(Gate::x(st));
      shot.log(k, "reset");
      shot.idle(k, 0, 2 * n + 1);
    }
    TrialRecord rec;
    rec.bitstrings = std::make_pair(b_bits, c_bits);
    rec.pass = parity_rule_passes(b_bits, c_bits);
    return rec;
  });
}

ProtocolRun run_s3(const StateVector& psi_a, const StateVector& psi_b, std::size_t shots,
                   const NoiseBudget& noise, const ProtocolOptions& options,
                   RandomSource& rng) {
  check_inputs(psi_a, psi_b, noise);
  const int n = psi_a.num_qubits();
  const StateVector init = initial_register(psi_a, psi_b, 0);
  return run_shots(init, shots, noise, options, rng, [&](Shot& shot) {
    std::uint64_t b_bits = 0;
    std::uint64_t c_bits = 0;
    for (int k = 0; k < n; ++k) {
      const int bk = n + k;
      shot.fly(k, k);
      // CNOT(b_k -> a_k) = H(a_k) CPHASE(a_k, b_k) H(a_k)
      shot.gate(k, Gate::h(k));
      shot.gate(k, Gate::cphase(k, bk));
      shot.gate(k, Gate::h(k));
      shot.block_error(k, {k, bk});
      shot.fly(k, k);
      shot.gate(k, Gate::h(bk));
      const auto [b, c] = shot.read_pair(k, k, bk);
      b_bits |= static_cast<std::uint64_t>(b) << k;
      c_bits |= static_cast<std::uint64_t>(c) << k;
      shot.idle(k, 0, 2 * n);
    }
    TrialRecord rec;
    rec.bitstrings = std::make_pair(b_bits, c_bits);
    rec.pass = parity_rule_passes(b_bits, c_bits);
    return rec;
  });
}

ProtocolRun run_scheme(Scheme scheme, const StateVector& psi_a, const StateVector& psi_b,
                       std::size_t shots, const NoiseBudget& noise,
                       const ProtocolOptions& options, RandomSource& rng) {
  switch (scheme) {
    case Scheme::kS1: return run_s1(psi_a, psi_b, shots, noise, options, rng);
    case Scheme::kS2: return run_s2(psi_a, psi_b, shots, noise, options, rng);
    case Scheme::kS3: return run_s3(psi_a, psi_b, shots, noise, options, rng);
  }
  throw std::logic_error("unhandled scheme");
}

ProtocolRun run_scheme(Scheme scheme, const Circuit& prep_a, const Circuit& prep_b,
                       std::size_t shots, const NoiseBudget& noise,
                       const ProtocolOptions& options, RandomSource& rng) {
  if (prep_a.num_qubits() != prep_b.num_qubits()) {
    throw std::invalid_argument("preparation circuits act on different qubit counts");
  }
  return run_scheme(scheme, prep_a.prepare(), prep_b.prepare(), shots, noise, options, rng);
}

}  // namespace qnv
