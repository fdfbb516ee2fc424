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

#include "qnv/hom.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qnv/parallel.h"

namespace qnv {

namespace {

// Start of the nonzero interval of a time-bin mode.
double bin_start(const ModeFunction& m) { return m.delay() + m.bin_index() * m.parameter(); }

bool same_family(const ModeFunction& a, const ModeFunction& b) {
  return a.shape() == b.shape() && a.parameter() == b.parameter();
}

}  // namespace

double gaussian_overlap_sq(double delta, double sigma) {
  return std::exp(-delta * delta / (2.0 * sigma * sigma));
}

double lorentzian_overlap_sq(double delta, double rate) {
  return std::exp(-2.0 * rate * std::abs(delta));
}

double sech_overlap_sq(double delta, double rate) {
  const double a = 0.5 * rate * std::abs(delta);
  if (a < 1e-8) return 1.0;
  const double r = a / std::sinh(a);
  return r * r;
}

double printed_gaussian_pc(double delta, double sigma) {
  return 0.5 * (1.0 + std::exp(-delta * delta / (2.0 * sigma * sigma)));
}

double printed_lorentzian_pc(double delta, double rate) {
  return 0.5 * (1.0 + std::exp(-2.0 * rate * delta));
}

double printed_sech_pc(double delta, double rate) {
  const double x = rate * delta;
  return 0.25 * x * (1.0 - 1.0 / std::sinh(0.5 * x));
}

std::complex<double> mode_overlap_quadrature(const ModeFunction& psi1,
                                             const ModeFunction& psi2) {
  const auto [lo1, hi1] = psi1.support();
  const auto [lo2, hi2] = psi2.support();
  const double lo = std::max(lo1, lo2);
  const double hi = std::min(hi1, hi2);
  if (!(hi > lo)) return 0.0;
  std::vector<double> breaks = psi1.kinks();
  const auto k2 = psi2.kinks();
  breaks.insert(breaks.end(), k2.begin(), k2.end());
  std::vector<double> inside;
  for (double b : breaks) {
    if (b > lo && b < hi) inside.push_back(b);
  }
  return integrate([&](double t) { return psi1(t) * psi2(t); }, lo, hi, inside);
}

std::complex<double> mode_overlap(const ModeFunction& psi1, const ModeFunction& psi2) {
  if (!same_family(psi1, psi2)) return mode_overlap_quadrature(psi1, psi2);
  const double delta = psi2.delay() - psi1.delay();
  switch (psi1.shape()) {
    case ModeShape::kGaussian:
      return std::sqrt(gaussian_overlap_sq(delta, psi1.parameter()));
    case ModeShape::kLorentzian:
      return std::sqrt(lorentzian_overlap_sq(delta, psi1.parameter()));
    case ModeShape::kSech:
      return std::sqrt(sech_overlap_sq(delta, psi1.parameter()));
    case ModeShape::kTimeBin: {
      const double w = psi1.parameter();
      const double shift = std::abs(bin_start(psi2) - bin_start(psi1));
      return std::max(0.0, w - shift) / w;
    }
  }
  return mode_overlap_quadrature(psi1, psi2);
}

double coincidence_probability(const ModeFunction& psi1, const ModeFunction& psi2) {
  const double v = std::min(1.0, std::norm(mode_overlap(psi1, psi2)));
  return 0.5 * (1.0 - v);
}

std::vector<HomComparisonRow> hom_comparison_table(double sigma, double rate, int points,
                                                   double max_delay_widths) {
  if (points < 2) throw std::invalid_argument("comparison table needs at least two points");
  std::vector<HomComparisonRow> rows;
  const auto sweep = [&](const ModeFunction& base, double width, double (*printed)(double, double),
                         double param) {
    for (int i = 0; i < points; ++i) {
      const double delta = max_delay_widths * width * i / (points - 1);
      const ModeFunction other = base.delayed(delta);
      const double v = std::norm(mode_overlap(base, other));
      const double vq = std::norm(mode_overlap_quadrature(base, other));
      rows.push_back({mode_shape_name(base.shape()), delta, v, vq, 0.5 * (1.0 - v),
                      printed(delta, param)});
    }
  };
  sweep(ModeFunction::gaussian(sigma), sigma, printed_gaussian_pc, sigma);
  sweep(ModeFunction::lorentzian(rate), 1.0 / rate, printed_lorentzian_pc, rate);
  sweep(ModeFunction::sech(rate), 1.0 / rate, printed_sech_pc, rate);
  return rows;
}

std::string hom_discrepancy_report(const std::vector<HomComparisonRow>& rows) {
  std::ostringstream os;
  os << "HOM coincidence probability: overlap law vs printed expressions\n";
  os << "law: p_c = (1 - |<psi1|psi2>|^2) / 2, so p_c = 0 for identical photons and\n";
  os << "p_c -> 1/2 for distinguishable ones.\n\n";
  for (const char* shape : {"gaussian", "lorentzian", "sech"}) {
    double printed_zero = 0.0, law_zero = 0.0, printed_far = 0.0, law_far = 0.0;
    double min_printed = 1e300, max_gap = 0.0, max_bunching_gap = 0.0;
    int negative = 0, outside = 0, count = 0;
    bool first = true;
    for (const auto& r : rows) {
      if (r.shape != shape) continue;
      if (first) {
        printed_zero = r.pc_printed;
        law_zero = r.pc_law;
        first = false;
      }
      printed_far = r.pc_printed;
      law_far = r.pc_law;
      ++count;
      if (std::isfinite(r.pc_printed)) {
        min_printed = std::min(min_printed, r.pc_printed);
        max_gap = std::max(max_gap, std::abs(r.pc_printed - r.pc_law));
        max_bunching_gap = std::max(max_bunching_gap, std::abs(r.pc_printed - (1.0 - r.pc_law)));
        if (r.pc_printed < 0.0) ++negative;
        if (r.pc_printed < 0.0 || r.pc_printed > 0.5) ++outside;
      }
    }
    if (count == 0) continue;
    os << "[" << shape << "] " << count << " delays\n";
    os << "  delay 0:       law " << law_zero << ", printed ";
    if (std::isfinite(printed_zero)) {
      os << printed_zero << "\n";
    } else {
      os << "undefined (0/0)\n";
    }
    os << "  largest delay: law " << law_far << ", printed " << printed_far << "\n";
    os << "  printed values outside [0, 1/2]: " << outside << " (negative: " << negative
       << ", minimum " << min_printed << ")\n";
    os << "  max |printed - law|: " << max_gap << "\n";
    os << "  max |printed - (1 - law)|: " << max_bunching_gap << "\n";
    if (std::string(shape) == "sech") {
      os << "  note: the printed sech expression tends to -1/2 as the delay goes to 0;\n"
            "  it is negative at small delays and cannot be a probability there.\n";
    } else {
      os << "  note: the printed expression equals 1 - p_c (the same-port probability),\n"
            "  which suggests a sign error in front of the exponential.\n";
    }
    os << "\n";
  }
  os << "The printed expressions are reproduced unchanged; coincidence_probability uses\n"
        "the overlap law.\n";
  return os.str();
}

std::vector<ModePair> identical_timebin_pairs(int n) {
  std::vector<ModePair> out;
  const ModeFunction bin = ModeFunction::timebin(1.0, 0);
  for (int k = 0; k < n; ++k) out.push_back({bin, bin});
  return out;
}

std::vector<double> visibilities(const std::vector<ModePair>& pairs) {
  std::vector<double> v;
  v.reserve(pairs.size());
  for (const auto& p : pairs) v.push_back(std::min(1.0, std::norm(mode_overlap(p.first, p.second))));
  return v;
}

ProtocolRun run_s4(const StateVector& psi_a, const StateVector& psi_b, std::size_t shots,
                   const std::vector<double>& visibility, const NoiseBudget& noise,
                   const ProtocolOptions& options, RandomSource& rng) {
  if (psi_a.num_qubits() != psi_b.num_qubits()) {
    throw std::invalid_argument("node registers hold different qubit counts");
  }
  const int n = psi_a.num_qubits();
  if (static_cast<int>(visibility.size()) != n) {
    throw std::invalid_argument("need one visibility per qubit pair");
  }
  for (double v : visibility) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("visibility must lie in [0, 1]");
  }
  noise.validate();
  const StateVector init = StateVector::tensor(psi_a, psi_b);

  ProtocolRun run;
  run.records.resize(shots);
  if (options.trace) run.traces.resize(shots);
  RandomSource base = rng.fork();
  parallel_for(shots, [&](std::size_t i) {
    RandomSource r = base.child(i);
    StateVector s = init;
    ChannelLedger ledger;
    std::vector<ProtocolEvent> events;
    int errors = 0;
    auto log = [&](int block, const char* kind, bool err) {
      if (err) ++errors;
      if (options.trace) events.push_back({block, kind, ledger.uses(), err});
    };
    std::uint64_t b_bits = 0, c_bits = 0;
    for (int k = 0; k < n; ++k) {
      const int bk = n + k;
      // photon k of node A travels to the beam splitter
      ledger.record_crossing();
      bool err = apply_depolarizing(s, k, 1.0 - noise.f_transfer, r);
      if (options.damping == DampingMode::kPerCrossing) {
        err |= apply_amplitude_damping(s, k, noise.gamma, noise.t_block, r);
      }
      log(k, "transmit", err);

      int b = 0, c = 0;
      if (r.bernoulli(visibility[k])) {
        s.apply(Gate::cnot(bk, k));
        s.apply(Gate::h(bk));
        b = measure_qubit(s, k, r);
        c = measure_qubit(s, bk, r);
        log(k, "interfere", false);
      } else {
        measure_qubit(s, k, r);
        measure_qubit(s, bk, r);
        if (r.bernoulli(0.5)) {
          b = c = 1;
        } else {
          const int pick = static_cast<int>(r.below(3));  // 00, 01, 10
          b = pick == 2;
          c = pick == 1;
        }
        log(k, "distinguishable", false);
      }
      const bool flip = flip_readout(0, noise.f_readout, r) == 1;
      if (flip) {
        if (r.below(2) == 0) {
          b ^= 1;
        } else {
          c ^= 1;
        }
      }
      log(k, "measure", flip);
      b_bits |= static_cast<std::uint64_t>(b) << k;
      c_bits |= static_cast<std::uint64_t>(c) << k;
    }
    TrialRecord rec;
    rec.bitstrings = std::make_pair(b_bits, c_bits);
    rec.pass = parity_rule_passes(b_bits, c_bits);
    rec.channel_uses = ledger.uses();
    rec.error_events = errors;
    run.records[i] = rec;
    if (options.trace) run.traces[i] = std::move(events);
  });
  return run;
}

}  // namespace qnv
