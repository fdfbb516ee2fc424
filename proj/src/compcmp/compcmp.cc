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

#include "qnv/compcmp.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qnv/parallel.h"

namespace qnv {

namespace {

void check_pair(const UnitarySpec& a, const UnitarySpec& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("compared unitaries act on different qubit counts");
  }
  if (a.num_qubits() < 1) throw std::invalid_argument("compared unitaries need n >= 1");
}

double binomial_se(double p, std::size_t m) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(m));
}

// Apply a positioned circuit as one noisy block charged to `qubits`.
void run_block(StateVector& s, const Circuit& c, const std::vector<int>& qubits,
               const LocalNoise* noise, RandomSource& rng) {
  if (!noise) {
    c.apply_to(s);
    return;
  }
  const NoiseBudget& b = noise->budget;
  if (noise->per_gate) {
    for (const auto& g : c.gates()) noisy_gate(s, g, b.f_gate, rng);
  } else {
    c.apply_to(s);
    if (b.f_gate < 1.0 && rng.bernoulli(1.0 - b.f_gate)) {
      for (int q : qubits) apply_random_pauli(s, q, rng);
    }
  }
  if (b.decay_exponent() > 0.0) {
    for (int q : qubits) apply_amplitude_damping(s, q, b.gamma, b.t_block, rng);
  }
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int q = lo; q < hi; ++q) v.push_back(q);
  return v;
}

// Passes of an overlap test between two prepared states.
std::size_t overlap_passes(OverlapTest test, const StateVector& a, const StateVector& b,
                           std::size_t shots, const LocalNoise* noise, RandomSource& rng) {
  const auto records = run_overlap_test(test, a, b, shots, noise, rng);
  return count_passes(records);
}

StateVector apply_to_basis(const UnitarySpec& u, std::uint64_t p) {
  StateVector s = StateVector::basis(u.num_qubits(), p);
  u.circuit.apply_to(s);
  return s;
}

// Number of zeros read from `anc` over `shots` runs of `prepare`, which
// builds the pre-measurement state (with noise if any).
template <typename Prepare>
std::size_t ancilla_zeros(int anc, std::size_t shots, const LocalNoise* noise, RandomSource& rng,
                          Prepare prepare) {
  RandomSource base = rng.fork();
  if (!noise) {
    RandomSource r = base.child(0);
    const StateVector s = prepare(r);
    const double p0 = std::clamp(1.0 - s.probability_one(anc), 0.0, 1.0);
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < shots; ++i) zeros += r.bernoulli(p0);
    return zeros;
  }
  std::vector<char> zero(shots);
  parallel_for(shots, [&](std::size_t i) {
    RandomSource r = base.child(i);
    StateVector s = prepare(r);
    const int bit = flip_readout(measure_qubit(s, anc, r), noise->budget.f_readout, r);
    zero[i] = bit == 0;
  });
  std::size_t zeros = 0;
  for (char z : zero) zeros += z;
  return zeros;
}

// Ancilla in |+> (real part) or |-i> (imaginary part), then U_L when the
// ancilla is 0 and U_R when it is 1, then H. Data register [lo, lo + n),
// `u_r_offset` shifts U_R (used by the entangled variant).
StateVector hadamard_circuit(StateVector s, const UnitarySpec& u_l, const UnitarySpec& u_r,
                             int l_offset, int r_offset, int anc, HadamardPart part,
                             const LocalNoise* noise, RandomSource& rng) {
  const int total = s.num_qubits();
  const int n = u_l.num_qubits();
  s.apply(Gate::h(anc));
  if (part == HadamardPart::kImag) s.apply(Gate::sdg(anc));
  auto block = range(l_offset, l_offset + n);
  block.push_back(anc);
  run_block(s, u_l.circuit.shifted(l_offset, total).controlled(anc, false), block, noise, rng);
  block = range(r_offset, r_offset + n);
  block.push_back(anc);
  run_block(s, u_r.circuit.shifted(r_offset, total).controlled(anc, true), block, noise, rng);
  s.apply(Gate::h(anc));
  return s;
}

std::vector<std::uint64_t> draw_indices(std::uint64_t population, int count, bool exhaustive,
                                        RandomSource& rng) {
  std::vector<std::uint64_t> out;
  if (exhaustive) {
    for (std::uint64_t i = 0; i < population; ++i) out.push_back(i);
  } else {
    for (int i = 0; i < count; ++i) out.push_back(rng.below(population));
  }
  return out;
}

}  // namespace

void SamplingPlan::validate() const {
  if (m_b < 1 || m_s < 1 || L < 1 || K < 1) {
    throw std::invalid_argument("sampling plan sizes must all be positive");
  }
}

StateVector choi_state(const UnitarySpec& u) {
  const int n = u.num_qubits();
  StateVector s = StateVector::zero(2 * n);
  for (int k = 0; k < n; ++k) {
    s.apply(Gate::h(k));
    s.apply(Gate::cnot(k, n + k));
  }
  u.circuit.apply_to(s);
  return s;
}

double m1_choi_exact(const UnitarySpec& u_l, const UnitarySpec& u_r) {
  check_pair(u_l, u_r);
  return std::norm(overlap(choi_state(u_l), choi_state(u_r)));
}

MethodEstimate m1_choi_compare(const UnitarySpec& u_l, const UnitarySpec& u_r, OverlapTest test,
                               std::size_t shots, const LocalNoise* noise, RandomSource& rng) {
  check_pair(u_l, u_r);
  if (shots == 0) throw std::invalid_argument("M1 needs at least one shot");
  const int n = u_l.num_qubits();
  const int width = test == OverlapTest::kSwap ? 4 * n + 1 : 4 * n;
  if (width > kDefaultMaxQubits) throw std::out_of_range("Choi comparison exceeds the qubit cap");
  const StateVector a = choi_state(u_l);
  const StateVector b = choi_state(u_r);
  const std::size_t passes = overlap_passes(test, a, b, shots, noise, rng);
  const double p_hat = static_cast<double>(passes) / static_cast<double>(shots);
  MethodEstimate e;
  e.estimate = 2.0 * p_hat - 1.0;
  e.std_error = 2.0 * binomial_se(p_hat, shots);
  e.oracle = std::norm(overlap(a, b));
  e.model_std_error = 2.0 * binomial_se((1.0 + e.oracle) / 2.0, shots);
  e.exact = n <= 12 ? process_fidelity(u_l, u_r) : e.oracle;
  e.shots = shots;
  return e;
}

std::vector<Circuit> design_pool(int n, int pool_size, RandomSource& rng) {
  std::vector<Circuit> pool;
  if (n == 1) {
    for (const auto& c : clifford_group_1q()) pool.push_back(c.circuit);
    return pool;
  }
  if (pool_size < 1) throw std::invalid_argument("design pool must be non-empty");
  for (int k = 0; k < pool_size; ++k) pool.push_back(random_clifford_circuit(n, 3 * n, rng).circuit);
  return pool;
}

double m2_two_design_exact(const UnitarySpec& u_l, const UnitarySpec& u_r,
                           const std::vector<Circuit>& pool) {
  check_pair(u_l, u_r);
  if (pool.empty()) throw std::invalid_argument("design pool must be non-empty");
  double f_av = 0.0;
  for (const auto& c : pool) {
    StateVector a = c.prepare();
    StateVector b = a;
    u_l.circuit.apply_to(a);
    u_r.circuit.apply_to(b);
    f_av += std::norm(overlap(a, b));
  }
  f_av /= static_cast<double>(pool.size());
  const double d = static_cast<double>(u_l.dim());
  return ((d + 1.0) * f_av - 1.0) / d;
}

MethodEstimate m2_two_design(const UnitarySpec& u_l, const UnitarySpec& u_r,
                             const SamplingPlan& plan, OverlapTest test,
                             const LocalNoise* noise, RandomSource& rng) {
  check_pair(u_l, u_r);
  plan.validate();
  const int n = u_l.num_qubits();
  // One qubit: the exact 24-element group. Otherwise every draw is a fresh
  // random Clifford circuit.
  const auto& group = clifford_group_1q();
  std::vector<Circuit> preps;
  if (n == 1) {
    for (auto i : draw_indices(group.size(), plan.L, plan.exhaustive, rng)) {
      preps.push_back(group[i].circuit);
    }
  } else {
    for (int i = 0; i < plan.L; ++i) preps.push_back(random_clifford_circuit(n, 3 * n, rng).circuit);
  }
  const double d = static_cast<double>(u_l.dim());
  const double scale = 2.0 * (d + 1.0) / (static_cast<double>(preps.size()) * d);

  double sum_hat = 0.0, sum_exact = 0.0, var_hat = 0.0, var_exact = 0.0;
  RandomSource base = rng.fork();
  for (std::size_t i = 0; i < preps.size(); ++i) {
    StateVector a = preps[i].prepare();
    StateVector b = a;
    u_l.circuit.apply_to(a);
    u_r.circuit.apply_to(b);
    RandomSource r = base.child(i);
    const std::size_t passes = overlap_passes(test, a, b, plan.m_s, noise, r);
    const double p_hat = static_cast<double>(passes) / plan.m_s;
    const double p = exact_pass_probability(a, b);
    sum_hat += p_hat;
    sum_exact += p;
    var_hat += p_hat * (1.0 - p_hat) / plan.m_s;
    var_exact += p * (1.0 - p) / plan.m_s;
  }
  MethodEstimate e;
  e.estimate = scale * sum_hat - (d + 2.0) / d;
  e.oracle = scale * sum_exact - (d + 2.0) / d;
  e.std_error = scale * std::sqrt(std::max(0.0, var_hat));
  e.model_std_error = scale * std::sqrt(std::max(0.0, var_exact));
  e.exact = n <= 12 ? process_fidelity(u_l, u_r) : e.oracle;
  e.shots = preps.size() * static_cast<std::size_t>(plan.m_s);
  return e;
}

MethodEstimate hadamard_test(const UnitarySpec& u_l, const UnitarySpec& u_r, std::uint64_t p,
                             HadamardPart part, std::size_t shots, const LocalNoise* noise,
                             RandomSource& rng) {
  check_pair(u_l, u_r);
  if (shots == 0) throw std::invalid_argument("Hadamard test needs at least one shot");
  const int n = u_l.num_qubits();
  if (p >= u_l.dim()) throw std::out_of_range("basis state index out of range");
  const int anc = n;
  auto prepare = [&](RandomSource& r) {
    return hadamard_circuit(StateVector::basis(n + 1, p), u_l, u_r, 0, 0, anc, part, noise, r);
  };
  const std::size_t zeros = ancilla_zeros(anc, shots, noise, rng, prepare);
  const double p_hat = static_cast<double>(zeros) / static_cast<double>(shots);
  RandomSource unused(0, 0);
  const StateVector ideal = hadamard_circuit(StateVector::basis(n + 1, p), u_l, u_r, 0, 0, anc,
                                             part, nullptr, unused);
  const double p0 = 1.0 - ideal.probability_one(anc);
  const Amplitude amp = overlap(apply_to_basis(u_l, p), apply_to_basis(u_r, p));

  MethodEstimate e;
  e.estimate = 2.0 * p_hat - 1.0;
  e.std_error = 2.0 * binomial_se(p_hat, shots);
  e.oracle = 2.0 * p0 - 1.0;
  e.model_std_error = 2.0 * binomial_se(p0, shots);
  e.exact = part == HadamardPart::kReal ? amp.real() : amp.imag();
  e.shots = shots;
  return e;
}

ComplexEstimate m2_trace_sampling(const UnitarySpec& u_l, const UnitarySpec& u_r,
                                  const SamplingPlan& plan, const LocalNoise* noise,
                                  RandomSource& rng) {
  check_pair(u_l, u_r);
  plan.validate();
  const auto draws = draw_indices(u_l.dim(), plan.m_b, plan.exhaustive, rng);
  const double m = static_cast<double>(draws.size());
  ComplexEstimate out;
  double var_re = 0.0, var_im = 0.0;
  RandomSource base = rng.fork();
  for (std::size_t i = 0; i < draws.size(); ++i) {
    RandomSource r = base.child(i);
    const auto re = hadamard_test(u_l, u_r, draws[i], HadamardPart::kReal, plan.m_s, noise, r);
    const auto im = hadamard_test(u_l, u_r, draws[i], HadamardPart::kImag, plan.m_s, noise, r);
    out.estimate += Amplitude(re.estimate, im.estimate) / m;
    out.oracle += Amplitude(re.oracle, im.oracle) / m;
    var_re += re.std_error * re.std_error;
    var_im += im.std_error * im.std_error;
    out.shots += re.shots + im.shots;
  }
  out.std_error_re = std::sqrt(std::max(0.0, var_re)) / m;
  out.std_error_im = std::sqrt(std::max(0.0, var_im)) / m;
  out.exact = u_l.num_qubits() <= 12 ? normalized_trace(u_l, u_r) : out.oracle;
  return out;
}

ComplexEstimate m2_entangled_hadamard(const UnitarySpec& u_l, const UnitarySpec& u_r,
                                      std::size_t shots, const LocalNoise* noise,
                                      RandomSource& rng) {
  check_pair(u_l, u_r);
  if (shots == 0) throw std::invalid_argument("Hadamard test needs at least one shot");
  const int n = u_l.num_qubits();
  if (2 * n + 1 > kDefaultMaxQubits) throw std::out_of_range("entangled test exceeds the qubit cap");
  StateVector start = StateVector::zero(2 * n + 1);
  for (int k = 0; k < n; ++k) {
    start.apply(Gate::h(k));
    start.apply(Gate::cnot(k, n + k));
  }
  const int anc = 2 * n;
  ComplexEstimate out;
  double parts[2], oracles[2], ses[2];
  for (int which = 0; which < 2; ++which) {
    const HadamardPart part = which == 0 ? HadamardPart::kReal : HadamardPart::kImag;
    auto prepare = [&](RandomSource& r) {
      return hadamard_circuit(start, u_l, u_r, 0, n, anc, part, noise, r);
    };
    const std::size_t zeros = ancilla_zeros(anc, shots, noise, rng, prepare);
    const double p_hat = static_cast<double>(zeros) / static_cast<double>(shots);
    RandomSource unused(0, 0);
    const StateVector ideal = hadamard_circuit(start, u_l, u_r, 0, n, anc, part, nullptr, unused);
    parts[which] = 2.0 * p_hat - 1.0;
    oracles[which] = 1.0 - 2.0 * ideal.probability_one(anc);
    ses[which] = 2.0 * binomial_se(p_hat, shots);
  }
  out.estimate = {parts[0], parts[1]};
  out.oracle = {oracles[0], oracles[1]};
  out.std_error_re = ses[0];
  out.std_error_im = ses[1];
  out.exact = n <= 12 ? normalized_conjugate_trace(u_l, u_r) : out.oracle;
  out.shots = 2 * shots;
  return out;
}

MethodEstimate m2_fsq(const UnitarySpec& u_l, const UnitarySpec& u_r, const SamplingPlan& plan,
                      OverlapTest test, const LocalNoise* noise, RandomSource& rng) {
  check_pair(u_l, u_r);
  plan.validate();
  const auto draws = draw_indices(u_l.dim(), plan.m_b, plan.exhaustive, rng);
  const double m = static_cast<double>(draws.size());
  double sum_hat = 0.0, sum_exact = 0.0, var_hat = 0.0, var_exact = 0.0;
  RandomSource base = rng.fork();
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const StateVector a = apply_to_basis(u_l, draws[i]);
    const StateVector b = apply_to_basis(u_r, draws[i]);
    RandomSource r = base.child(i);
    const std::size_t passes = overlap_passes(test, a, b, plan.m_s, noise, r);
    const double p_hat = static_cast<double>(passes) / plan.m_s;
    const double p = exact_pass_probability(a, b);
    sum_hat += 2.0 * p_hat - 1.0;
    sum_exact += 2.0 * p - 1.0;
    var_hat += 4.0 * p_hat * (1.0 - p_hat) / plan.m_s;
    var_exact += 4.0 * p * (1.0 - p) / plan.m_s;
  }
  MethodEstimate e;
  e.estimate = sum_hat / m;
  e.oracle = sum_exact / m;
  e.std_error = std::sqrt(std::max(0.0, var_hat)) / m;
  e.model_std_error = std::sqrt(std::max(0.0, var_exact)) / m;
  e.exact = u_l.num_qubits() <= 12 ? fsq_dense(u_l, u_r) : e.oracle;
  e.shots = draws.size() * static_cast<std::size_t>(plan.m_s);
  return e;
}

namespace {

// Measuring cos(t) Z + sin(t) X equals Ry(-t) followed by a Z readout.
Gate basis_rotation(int q, double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  return Gate::unitary1(q, {c, s, -s, c});
}

}  // namespace

MethodEstimate m3_chsh(const UnitarySpec& u_l, const UnitarySpec& u_r,
                       std::size_t shots_per_setting, const LocalNoise* noise,
                       RandomSource& rng) {
  check_pair(u_l, u_r);
  if (u_l.num_qubits() != 1) throw std::invalid_argument("CHSH test compares single-qubit unitaries");
  if (shots_per_setting == 0) throw std::invalid_argument("CHSH test needs at least one shot");
  constexpr double kPi = std::numbers::pi;
  const double angle_a[2] = {-kPi / 4, kPi / 4};
  const double angle_b[2] = {0.0, kPi / 2};
  const double sign[4] = {1.0, -1.0, 1.0, 1.0};  // (a, b) = 00, 01, 10, 11

  auto prepare = [&](int setting, const LocalNoise* nz, RandomSource& r) {
    StateVector s = StateVector::zero(2);
    s.apply(Gate::h(0));
    s.apply(Gate::cnot(0, 1));
    run_block(s, u_l.circuit, {0}, nz, r);
    run_block(s, u_r.circuit.shifted(1, 2), {1}, nz, r);
    s.apply(basis_rotation(0, angle_a[setting / 2]));
    s.apply(basis_rotation(1, angle_b[setting % 2]));
    return s;
  };

  // exact correlators and outcome tables
  double corr_exact[4];
  std::vector<double> cdf[4];
  RandomSource unused(0, 0);
  for (int k = 0; k < 4; ++k) {
    const StateVector s = prepare(k, nullptr, unused);
    std::vector<double> probs(4);
    for (std::size_t i = 0; i < 4; ++i) probs[i] = std::norm(s[i]);
    corr_exact[k] = probs[0] - probs[1] - probs[2] + probs[3];
    cdf[k] = cumulative(probs);
  }

  const std::size_t total = 4 * shots_per_setting;
  std::vector<signed char> value(total);
  RandomSource base = rng.fork();
  if (!noise) {
    RandomSource r = base.child(0);
    for (std::size_t i = 0; i < total; ++i) {
      const std::size_t out = sample_cdf(cdf[i % 4], r);
      value[i] = std::popcount(out) % 2 ? -1 : 1;
    }
  } else {
    parallel_for(total, [&](std::size_t i) {
      RandomSource r = base.child(i);
      StateVector s = prepare(static_cast<int>(i % 4), noise, r);
      int a = measure_qubit(s, 0, r);
      int b = measure_qubit(s, 1, r);
      a = flip_readout(a, noise->budget.f_readout, r);
      b = flip_readout(b, noise->budget.f_readout, r);
      value[i] = (a ^ b) ? -1 : 1;
    });
  }
  double sum[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < total; ++i) sum[i % 4] += value[i];

  MethodEstimate e;
  double var_hat = 0.0, var_exact = 0.0;
  const double m = static_cast<double>(shots_per_setting);
  for (int k = 0; k < 4; ++k) {
    const double c = sum[k] / m;
    e.estimate += sign[k] * c;
    e.oracle += sign[k] * corr_exact[k];
    var_hat += (1.0 - c * c) / m;
    var_exact += (1.0 - corr_exact[k] * corr_exact[k]) / m;
  }
  e.std_error = std::sqrt(std::max(0.0, var_hat));
  e.model_std_error = std::sqrt(std::max(0.0, var_exact));
  e.exact = chsh_dense(u_l, u_r);
  e.shots = total;
  return e;
}

}  // namespace qnv
