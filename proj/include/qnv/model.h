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

#ifndef QNV_MODEL_H_
#define QNV_MODEL_H_

#include <string>
#include <vector>

#include "qnv/netproto.h"
#include "qnv/noise.h"
#include "qnv/random.h"

namespace qnv {

/// [F_st e^{-Gamma T}]^{2n} F_g^n F_r, or exponent n on the bracket when the
/// qubits are not sent back.
double p_s1(int n, const NoiseBudget& budget, bool return_qubits = true);
/// [F_st e^{-Gamma T} F_g F_r]^n.
double p_s2(int n, const NoiseBudget& budget);

/// Budgets of one band edge; the schemes differ in gate fidelity.
struct BandBudget {
  NoiseBudget s1;
  NoiseBudget s2;
};

struct SweepSpec {
  std::vector<int> n_values;
  BandBudget optimistic;
  BandBudget pessimistic;

  /// Throws unless every optimistic parameter is at least as good as its
  /// pessimistic counterpart and n_values are positive.
  void validate() const;
};

/// Transfer infidelity 0.75e-2 .. 1e-2, Gamma T 2.5e-3 .. 7.5e-3, readout
/// infidelity 1e-3, gate infidelity 2.5e-2 .. 5e-2 (S1) and 0.5e-2 .. 1e-2
/// (S2), n = 1..20. T_block is 1 so gamma carries Gamma T.
SweepSpec default_band_sweep();

struct SweepRow {
  int n;
  double p_s1_optimistic, p_s1_pessimistic;
  double p_s1_noreturn_optimistic, p_s1_noreturn_pessimistic;
  double p_s2_optimistic, p_s2_pessimistic;
};

std::vector<SweepRow> sweep(const SweepSpec& spec);
/// Header plus one row per n; the std_error column is 0 (exact values).
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Monte-Carlo counterpart of the closed forms: the fraction of shots that
/// pass with no error branch firing, for identical |1...1> states on both
/// nodes. Each shot succeeds with exactly the modelled probability.
struct SimulatedRate {
  double rate;
  std::size_t successes;
  std::size_t shots;
};
SimulatedRate simulated_error_free_rate(Scheme scheme, int n, const NoiseBudget& budget,
                                        bool return_qubits, std::size_t shots,
                                        RandomSource& rng);

}  // namespace qnv

#endif  // QNV_MODEL_H_
