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

#include "qnv/model.h"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace qnv {

namespace {

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("model needs n >= 1");
}

double link_factor(const NoiseBudget& b) { return b.f_transfer * std::exp(-b.decay_exponent()); }

void check_dominates(const NoiseBudget& good, const NoiseBudget& bad, const char* what) {
  good.validate();
  bad.validate();
  if (good.f_transfer < bad.f_transfer || good.f_gate < bad.f_gate ||
      good.f_readout < bad.f_readout || good.decay_exponent() > bad.decay_exponent()) {
    throw std::invalid_argument(std::string(what) +
                                ": optimistic budget must dominate the pessimistic one");
  }
}

}  // namespace

double p_s1(int n, const NoiseBudget& budget, bool return_qubits) {
  check_n(n);
  budget.validate();
  const int crossings = return_qubits ? 2 * n : n;
  return std::pow(link_factor(budget), crossings) * std::pow(budget.f_gate, n) * budget.f_readout;
}

double p_s2(int n, const NoiseBudget& budget) {
  check_n(n);
  budget.validate();
  return std::pow(link_factor(budget) * budget.f_gate * budget.f_readout, n);
}

void SweepSpec::validate() const {
  if (n_values.empty()) throw std::invalid_argument("sweep needs at least one n");
  for (int n : n_values) check_n(n);
  check_dominates(optimistic.s1, pessimistic.s1, "s1");
  check_dominates(optimistic.s2, pessimistic.s2, "s2");
}

SweepSpec default_band_sweep() {
  auto budget = [](double f_st, double gamma_t, double f_g) {
    NoiseBudget b;
    b.f_transfer = f_st;
    b.gamma = gamma_t;
    b.t_block = 1.0;
    b.f_gate = f_g;
    b.f_readout = 0.999;
    return b;
  };
  SweepSpec spec;
  for (int n = 1; n <= 20; ++n) spec.n_values.push_back(n);
  spec.optimistic = {budget(0.9925, 2.5e-3, 0.975), budget(0.9925, 2.5e-3, 0.995)};
  spec.pessimistic = {budget(0.99, 7.5e-3, 0.95), budget(0.99, 7.5e-3, 0.99)};
  return spec;
}

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  for (int n : spec.n_values) {
    rows.push_back({n, p_s1(n, spec.optimistic.s1), p_s1(n, spec.pessimistic.s1),
                    p_s1(n, spec.optimistic.s1, false), p_s1(n, spec.pessimistic.s1, false),
                    p_s2(n, spec.optimistic.s2), p_s2(n, spec.pessimistic.s2)});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "n,p_s1_optimistic,p_s1_pessimistic,p_s1_noreturn_optimistic,"
        "p_s1_noreturn_pessimistic,p_s2_optimistic,p_s2_pessimistic,std_error\n";
  os << std::setprecision(10);
  for (const auto& r : rows) {
    os << r.n << ',' << r.p_s1_optimistic << ',' << r.p_s1_pessimistic << ','
       << r.p_s1_noreturn_optimistic << ',' << r.p_s1_noreturn_pessimistic << ','
       << r.p_s2_optimistic << ',' << r.p_s2_pessimistic << ",0\n";
  }
  return os.str();
}

SimulatedRate simulated_error_free_rate(Scheme scheme, int n, const NoiseBudget& budget,
                                        bool return_qubits, std::size_t shots,
                                        RandomSource& rng) {
  check_n(n);
  if (shots == 0) throw std::invalid_argument("need at least one shot");
  const StateVector ones = StateVector::basis(n, (std::uint64_t{1} << n) - 1);
  ProtocolOptions opts;
  opts.return_qubits = return_qubits;
  const ProtocolRun run = run_scheme(scheme, ones, ones, shots, budget, opts, rng);
  std::size_t ok = 0;
  for (const auto& r : run.records) ok += r.pass && r.error_events == 0;
  return {static_cast<double>(ok) / static_cast<double>(shots), ok, shots};
}

}  // namespace qnv
