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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qnv/cli.h"
#include "qnv/hom.h"
#include "qnv/model.h"
#include "qnv/overlap.h"
#include "qnv/stats.h"

#ifndef QNV_VERSION
#define QNV_VERSION "0.1.0"
#endif

namespace qnv::cli {

namespace {

constexpr double kPi = std::numbers::pi;

template <typename T>
T param(const ExperimentConfig& c, const char* key, T fallback) {
  return c.params.contains(key) ? c.params[key].get<T>() : fallback;
}

RandomSource root_rng(const ExperimentConfig& c) { return RandomSource(c.seed.value_or(0), 0); }

// Stable child-stream key from small integers.
std::uint64_t key(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (auto p : parts) h = mix64(h ^ (p + 0x632be59bd9b4e019ULL));
  return h;
}

std::uint64_t key_of(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ULL;
  return h;
}

const LocalNoise* local_noise(const ExperimentConfig& c, LocalNoise& storage) {
  if (c.noise.is_ideal()) return nullptr;
  storage.budget = c.noise;
  return &storage;
}

StateVector named_state(const std::string& name, int n, RandomSource& rng) {
  StateVector s = StateVector::zero(n);
  if (name == "zero") return s;
  if (name == "random") return StateVector::random(n, rng);
  for (int q = 0; q < n; ++q) {
    if (name == "one" || name == "minus") s.apply(Gate::x(q));
    if (name == "plus" || name == "minus") s.apply(Gate::h(q));
  }
  if (name == "ghz") {
    s.apply(Gate::h(0));
    for (int q = 1; q < n; ++q) s.apply(Gate::cnot(q - 1, q));
  }
  return s;
}

// ---------------------------------------------------------------- tables

ExperimentResult state_compare(const ExperimentConfig& c, bool trace) {
  const std::string a_name = param<std::string>(c, "state_a", "plus");
  const std::string b_name = param<std::string>(c, "state_b", a_name);
  const int pairs = param<int>(c, "pairs", 1);
  const auto n_values = param<std::vector<int>>(c, "n_values", {c.n});
  const double visibility = param<double>(c, "visibility", 1.0);
  const double alpha = param<double>(c, "alpha", 0.05);
  const auto method = parse_interval_method(param<std::string>(c, "interval", "clopper_pearson"));

  ExperimentResult out;
  out.table.columns = {"n",        "pair",     "scheme",   "shots",       "passes",
                       "estimate", "std_error", "ci_lower", "ci_upper",   "exact",
                       "channel_uses", "error_free_rate"};
  std::ostringstream tr;
  const RandomSource root = root_rng(c);
  LocalNoise ln;
  for (int n : n_values) {
    for (int pair = 0; pair < pairs; ++pair) {
      RandomSource rng = root.child(key({static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(pair)}));
      const StateVector a = named_state(a_name, n, rng);
      const StateVector b = named_state(b_name, n, rng);
      std::vector<TrialRecord> records;
      std::vector<std::vector<ProtocolEvent>> traces;
      ProtocolOptions opts;
      opts.return_qubits = c.return_qubits;
      opts.damping = c.damping;
      opts.trace = trace;
      if (c.scheme == "swap" || c.scheme == "bell") {
        records = run_overlap_test(parse_overlap_test(c.scheme), a, b, c.shots,
                                   local_noise(c, ln), rng);
      } else {
        ProtocolRun run = c.scheme == "s4"
                              ? run_s4(a, b, c.shots, std::vector<double>(n, visibility), c.noise,
                                       opts, rng)
                              : run_scheme(parse_scheme(c.scheme), a, b, c.shots, c.noise, opts, rng);
        records = std::move(run.records);
        traces = std::move(run.traces);
      }
      const std::size_t passes = count_passes(records);
      std::size_t error_free = 0;
      for (const auto& r : records) {
        error_free += r.pass && r.error_events == 0;
        if (r.channel_uses != records.front().channel_uses) {
          throw std::logic_error("channel use count differs between shots");
        }
      }
      const auto ci = fidelity_interval(passes, c.shots, alpha, method);
      const double p_hat = static_cast<double>(passes) / c.shots;
      out.table.add({std::int64_t{n}, std::int64_t{pair}, c.scheme, static_cast<std::int64_t>(c.shots),
                     static_cast<std::int64_t>(passes), ci.estimate,
                     2.0 * std::sqrt(p_hat * (1.0 - p_hat) / c.shots), ci.lower, ci.upper,
                     std::norm(overlap(a, b)), std::int64_t{records.front().channel_uses},
                     static_cast<double>(error_free) / c.shots});
      for (std::size_t s = 0; s < traces.size(); ++s) {
        for (const auto& e : traces[s]) {
          Json line = {{"n", n},       {"pair", pair},     {"shot", s},
                       {"block", e.block}, {"kind", e.kind}, {"uses", e.uses},
                       {"error", e.error}};
          tr << line.dump() << '\n';
        }
      }
    }
  }
  if (trace) out.attachments[".trace.jsonl"] = tr.str();
  return out;
}

UnitarySpec build_unitary(const Json& spec, int n, RandomSource& rng, const UnitarySpec* left) {
  const std::string kind = spec.value("kind", std::string("identity"));
  Circuit c(n);
  auto all = [&](auto make) {
    for (int q = 0; q < n; ++q) c.append(make(q));
  };
  if (kind == "identity") return UnitarySpec(c, "I");
  if (kind == "hadamard") {
    all([](int q) { return Gate::h(q); });
    return UnitarySpec(c, "H");
  }
  if (kind == "pauli_x") {
    all([](int q) { return Gate::x(q); });
    return UnitarySpec(c, "X");
  }
  if (kind == "pauli_z") {
    all([](int q) { return Gate::z(q); });
    return UnitarySpec(c, "Z");
  }
  if (kind == "phase_hadamard") {
    const double phi = spec.value("phi", 0.0);
    all([](int q) { return Gate::h(q); });
    all([&](int q) { return Gate::phase(q, phi); });
    return UnitarySpec(c, "P*H");
  }
  if (kind == "random") return random_unitary_circuit(n, spec.value("depth", std::max(1, n)), rng);
  if (kind == "clifford") return random_clifford_circuit(n, spec.value("depth", 3 * n), rng);
  if (!left) throw std::invalid_argument("unitary kind '" + kind + "' needs a left unitary");
  if (kind == "same") return *left;
  if (kind == "conjugate") return left->conjugate();
  if (kind == "transpose") return left->transpose();
  if (kind == "rotated") {
    return left->then(random_rotation_layer(n, spec.value("max_angle", kPi), rng));
  }
  throw std::invalid_argument("unknown unitary kind '" + kind + "'");
}

std::vector<Cell> complex_row(const std::string& method, Amplitude est, double se, Amplitude oracle,
                              Amplitude exact, std::size_t shots) {
  return {method, est.real(), est.imag(), se, oracle.real(), oracle.imag(),
          exact.real(), exact.imag(), static_cast<std::int64_t>(shots)};
}

ExperimentResult comp_compare(const ExperimentConfig& c) {
  RandomSource rng = root_rng(c);
  const Json left_spec = param<Json>(c, "left", Json{{"kind", "identity"}});
  const Json right_spec = param<Json>(c, "right", Json{{"kind", "same"}});
  const UnitarySpec u_l = build_unitary(left_spec, c.n, rng, nullptr);
  const UnitarySpec u_r = build_unitary(right_spec, c.n, rng, &u_l);
  LocalNoise ln;
  const LocalNoise* noise = local_noise(c, ln);
  const OverlapTest test = parse_overlap_test(c.test);

  ExperimentResult out;
  out.table.columns = {"method",    "estimate_re", "estimate_im", "std_error", "oracle_re",
                       "oracle_im", "exact_re",    "exact_im",    "shots"};
  const std::string& m = c.method;
  if (m == "m2-trace" || m == "m2-entangled") {
    const ComplexEstimate e = m == "m2-trace" ? m2_trace_sampling(u_l, u_r, c.plan, noise, rng)
                                              : m2_entangled_hadamard(u_l, u_r, c.shots, noise, rng);
    out.table.add(complex_row(m, e.estimate, std::hypot(e.std_error_re, e.std_error_im), e.oracle,
                              e.exact, e.shots));
    return out;
  }
  MethodEstimate e;
  if (m == "m1") e = m1_choi_compare(u_l, u_r, test, c.shots, noise, rng);
  if (m == "m2-design") e = m2_two_design(u_l, u_r, c.plan, test, noise, rng);
  if (m == "m2-fsq") e = m2_fsq(u_l, u_r, c.plan, test, noise, rng);
  if (m == "m3") e = m3_chsh(u_l, u_r, std::max<std::uint64_t>(1, c.shots / 4), noise, rng);
  out.table.add(complex_row(m, e.estimate, e.std_error, e.oracle, e.exact, e.shots));
  return out;
}

ExperimentResult hom(const ExperimentConfig& c) {
  const auto rows = hom_comparison_table(param<double>(c, "sigma", 1.0), param<double>(c, "rate", 1.0),
                                         param<int>(c, "points", 50),
                                         param<double>(c, "max_delay_widths", 5.0));
  ExperimentResult out;
  out.table.columns = {"shape", "delta", "overlap_sq", "overlap_sq_quadrature", "pc_law",
                       "pc_printed", "std_error"};
  for (const auto& r : rows) {
    out.table.add({r.shape, r.delta, r.overlap_sq, r.overlap_sq_quadrature, r.pc_law, r.pc_printed,
                   0.0});
  }
  out.attachments[".report.txt"] = hom_discrepancy_report(rows);
  return out;
}

NoiseBudget budget_override(const Json& j, NoiseBudget b) {
  b.f_transfer = j.value("f_transfer", b.f_transfer);
  b.gamma = j.value("gamma", b.gamma);
  b.t_block = j.value("t_block", b.t_block);
  b.f_gate = j.value("f_gate", b.f_gate);
  b.f_readout = j.value("f_readout", b.f_readout);
  return b;
}

SweepSpec band_spec(const ExperimentConfig& c) {
  SweepSpec spec = default_band_sweep();
  const int n_max = param<int>(c, "n_max", 20);
  spec.n_values.clear();
  for (int n = 1; n <= n_max; ++n) spec.n_values.push_back(n);
  for (const char* side : {"optimistic", "pessimistic"}) {
    if (!c.params.contains(side)) continue;
    BandBudget& band = std::string(side) == "optimistic" ? spec.optimistic : spec.pessimistic;
    const Json& j = c.params[side];
    if (j.contains("s1")) band.s1 = budget_override(j["s1"], band.s1);
    if (j.contains("s2")) band.s2 = budget_override(j["s2"], band.s2);
  }
  return spec;
}

ExperimentResult model_sweep(const ExperimentConfig& c) {
  ExperimentResult out;
  out.table.columns = {"n",
                       "p_s1_optimistic",
                       "p_s1_pessimistic",
                       "p_s1_noreturn_optimistic",
                       "p_s1_noreturn_pessimistic",
                       "p_s2_optimistic",
                       "p_s2_pessimistic",
                       "std_error"};
  for (const auto& r : sweep(band_spec(c))) {
    out.table.add({std::int64_t{r.n}, r.p_s1_optimistic, r.p_s1_pessimistic,
                   r.p_s1_noreturn_optimistic, r.p_s1_noreturn_pessimistic, r.p_s2_optimistic,
                   r.p_s2_pessimistic, 0.0});
  }
  return out;
}

ExperimentResult fig4c(const ExperimentConfig& c) {
  const SweepSpec spec = band_spec(c);
  const int mc_n_max = param<int>(c, "mc_n_max", 6);
  const auto mc_shots = param<std::uint64_t>(c, "mc_shots", 10000);
  ExperimentResult out;
  out.table.columns = {"n", "series", "value", "std_error"};
  const RandomSource root = root_rng(c);
  for (const auto& r : sweep(spec)) {
    const std::int64_t n = r.n;
    out.table.add({n, std::string("p_s1_optimistic"), r.p_s1_optimistic, 0.0});
    out.table.add({n, std::string("p_s1_pessimistic"), r.p_s1_pessimistic, 0.0});
    out.table.add({n, std::string("p_s1_noreturn_optimistic"), r.p_s1_noreturn_optimistic, 0.0});
    out.table.add({n, std::string("p_s1_noreturn_pessimistic"), r.p_s1_noreturn_pessimistic, 0.0});
    out.table.add({n, std::string("p_s2_optimistic"), r.p_s2_optimistic, 0.0});
    out.table.add({n, std::string("p_s2_pessimistic"), r.p_s2_pessimistic, 0.0});
    if (r.n > mc_n_max || mc_shots == 0) continue;
    struct Series {
      const char* name;
      Scheme scheme;
      bool ret;
      int band;
    };
    const Series series[] = {{"mc_s1_optimistic", Scheme::kS1, true, 0},
                             {"mc_s1_pessimistic", Scheme::kS1, true, 1},
                             {"mc_s1_noreturn_optimistic", Scheme::kS1, false, 0},
                             {"mc_s1_noreturn_pessimistic", Scheme::kS1, false, 1},
                             {"mc_s2_optimistic", Scheme::kS2, true, 0},
                             {"mc_s2_pessimistic", Scheme::kS2, true, 1}};
    for (std::size_t k = 0; k < std::size(series); ++k) {
      const auto& s = series[k];
      const BandBudget& band = s.band == 0 ? spec.optimistic : spec.pessimistic;
      const NoiseBudget& budget = s.scheme == Scheme::kS1 ? band.s1 : band.s2;
      RandomSource rng = root.child(key({static_cast<std::uint64_t>(n), k}));
      const auto sim = simulated_error_free_rate(s.scheme, r.n, budget, s.ret, mc_shots, rng);
      out.table.add({n, std::string(s.name), sim.rate,
                     std::sqrt(sim.rate * (1.0 - sim.rate) / static_cast<double>(mc_shots))});
    }
  }
  return out;
}

ExperimentResult stats_table(const ExperimentConfig& c, bool fig7) {
  const double p = param<double>(c, "p_succ", (1.0 + std::cos(kPi / 4)) / 2.0);
  std::vector<double> alphas =
      fig7 ? param<std::vector<double>>(c, "alphas", {0.1, 0.05, 0.01})
           : std::vector<double>{param<double>(c, "alpha", 0.05)};
  std::vector<std::uint64_t> ms;
  if (c.params.contains("m_values")) {
    ms = c.params["m_values"].get<std::vector<std::uint64_t>>();
  } else {
    // decades, or half-decades for fig7
    const int steps = fig7 ? 2 : 1;
    for (int k = 2 * steps; k <= 6 * steps; ++k) {
      ms.push_back(static_cast<std::uint64_t>(std::llround(std::pow(10.0, double(k) / steps))));
    }
  }
  const double threshold = param<double>(c, "threshold", 0.01);
  const auto experiments = param<std::uint64_t>(c, "coverage_experiments", 0);

  ExperimentResult out;
  out.table.columns = {"alpha", "m", "hoeffding_eps", "cp_expected_width", "wald_expected_width",
                       "threshold"};
  if (experiments > 0) out.table.columns.push_back("cp_coverage");
  out.table.columns.push_back("std_error");
  const RandomSource root = root_rng(c);
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    for (std::size_t mi = 0; mi < ms.size(); ++mi) {
      const double alpha = alphas[ai];
      const std::uint64_t m = ms[mi];
      std::vector<Cell> row = {alpha, static_cast<std::int64_t>(m), hoeffding_epsilon(m, alpha),
                               expected_cp_width(m, p, alpha), expected_wald_width(m, p, alpha),
                               threshold};
      double se = 0.0;
      if (experiments > 0) {
        RandomSource rng = root.child(key({ai, mi}));
        const auto cov = cp_coverage(p, m, alpha, experiments, rng);
        row.push_back(cov.coverage);
        se = cov.std_error;
      }
      row.push_back(se);
      out.table.add(std::move(row));
    }
  }
  return out;
}

ExperimentResult fig2d(const ExperimentConfig& c) {
  const int points = param<int>(c, "phi_points", 16);
  const auto methods =
      param<std::vector<std::string>>(c, "methods", {"m1", "m2-design", "m2-fsq", "m3"});
  const OverlapTest test = parse_overlap_test(c.test);
  LocalNoise ln;
  const LocalNoise* noise = local_noise(c, ln);
  Circuit h(1);
  h.append(Gate::h(0));
  const UnitarySpec u_l(h, "H");

  ExperimentResult out;
  out.table.columns = {"method", "phi", "estimate", "std_error", "model_std_error", "analytic",
                       "shots"};
  const RandomSource root = root_rng(c);
  for (const auto& method : methods) {
    for (int k = 0; k < points; ++k) {
      const double phi = 2.0 * kPi * k / points;
      const UnitarySpec u_r = phase_after_hadamard(phi);
      RandomSource rng = root.child(key({key_of(method), static_cast<std::uint64_t>(k)}));
      MethodEstimate e;
      double analytic = (1.0 + std::cos(phi)) / 2.0;
      if (method == "m1") {
        e = m1_choi_compare(u_l, u_r, test, c.shots, noise, rng);
      } else if (method == "m2-design") {
        SamplingPlan plan;
        plan.exhaustive = true;
        plan.m_s = static_cast<int>((c.shots + 23) / 24);
        e = m2_two_design(u_l, u_r, plan, test, noise, rng);
      } else if (method == "m2-fsq") {
        SamplingPlan plan;
        plan.exhaustive = true;
        plan.m_s = static_cast<int>((c.shots + 1) / 2);
        e = m2_fsq(u_l, u_r, plan, test, noise, rng);
      } else {
        e = m3_chsh(u_l, u_r, std::max<std::uint64_t>(1, c.shots / 4), noise, rng);
        analytic = std::numbers::sqrt2 * (1.0 + std::cos(phi));
      }
      out.table.add({method, phi, e.estimate, e.std_error, e.model_std_error, analytic,
                     static_cast<std::int64_t>(e.shots)});
    }
  }
  return out;
}

// Error of the sampled-state estimators against dense oracles as the
// number of sampled states grows.
ExperimentResult sample_complexity(const ExperimentConfig& c, bool supplement) {
  const auto m_b_values = param<std::vector<int>>(c, "m_b_values", {4, 8, 12, 16, 20, 24, 28, 32});
  const auto m_s_values =
      supplement ? param<std::vector<int>>(c, "m_s_values", {100, 1000, 10000})
                 : std::vector<int>{c.plan.m_s};
  const int trials = param<int>(c, "trials", supplement ? 10 : 20);
  const int depth = param<int>(c, "depth", c.n);
  const double max_angle = param<double>(c, "max_angle", kPi);
  const auto strategies = param<std::vector<std::string>>(
      c, "strategies",
      supplement ? std::vector<std::string>{"design", "trace", "fsq", "entangled"}
                 : std::vector<std::string>{"design", "trace", "fsq"});
  const int resamples = param<int>(c, "bootstrap_resamples", 1000);
  const OverlapTest test = parse_overlap_test(c.test);
  LocalNoise ln;
  const LocalNoise* noise = local_noise(c, ln);

  const RandomSource root = root_rng(c);
  RandomSource setup = root.child(1);
  const UnitarySpec u_l = random_unitary_circuit(c.n, depth, setup);
  const UnitarySpec u_r = u_l.then(random_rotation_layer(c.n, max_angle, setup));
  const UnitarySpec u_l_t = u_l.transpose();
  const double f_p = process_fidelity(u_l, u_r);
  const Amplitude trace = normalized_trace(u_l, u_r);
  const double fsq = fsq_dense(u_l, u_r);
  const Amplitude conj_trace = normalized_conjugate_trace(u_l_t, u_r);

  ExperimentResult out;
  out.table.columns = {"strategy", "m_s", "m_b", "total_samples", "mean_abs_error",
                       "std_error", "oracle_abs"};
  for (int m_s : m_s_values) {
    for (const auto& strategy : strategies) {
      for (int m_b : m_b_values) {
        std::vector<double> errors;
        for (int t = 0; t < trials; ++t) {
          RandomSource rng = root.child(key({key_of(strategy), static_cast<std::uint64_t>(m_s),
                                             static_cast<std::uint64_t>(m_b),
                                             static_cast<std::uint64_t>(t)}));
          SamplingPlan plan;
          plan.m_b = m_b;
          plan.L = m_b;
          plan.m_s = m_s;
          plan.K = c.plan.K;
          double err = 0.0;
          if (strategy == "design") {
            err = std::abs(m2_two_design(u_l, u_r, plan, test, noise, rng).estimate - f_p);
          } else if (strategy == "trace") {
            err = std::abs(m2_trace_sampling(u_l, u_r, plan, noise, rng).estimate - trace);
          } else if (strategy == "fsq") {
            err = std::abs(m2_fsq(u_l, u_r, plan, test, noise, rng).estimate - fsq);
          } else {
            const auto e = m2_entangled_hadamard(
                u_l_t, u_r, static_cast<std::size_t>(m_b) * m_s, noise, rng);
            err = std::abs(e.estimate - conj_trace);
          }
          errors.push_back(err);
        }
        double mean = 0.0;
        for (double e : errors) mean += e;
        mean /= errors.size();
        RandomSource boot = root.child(key({key_of(strategy), static_cast<std::uint64_t>(m_s),
                                            static_cast<std::uint64_t>(m_b), 0xb007ULL}));
        const double se = bootstrap_stderr(errors, resamples, boot);
        double oracle = 0.0;
        if (strategy == "design") oracle = f_p;
        if (strategy == "trace") oracle = std::abs(trace);
        if (strategy == "fsq") oracle = fsq;
        if (strategy == "entangled") oracle = std::abs(conj_trace);
        out.table.add({strategy, std::int64_t{m_s}, std::int64_t{m_b},
                       static_cast<std::int64_t>(m_s) * m_b, mean, se, oracle});
      }
    }
  }
  return out;
}

ExperimentResult fig5(const ExperimentConfig& c) {
  const int theta_points = param<int>(c, "theta_points", 17);
  const int phi_points = param<int>(c, "phi_points", 17);
  const auto tests = param<std::vector<std::string>>(c, "tests", {"swap", "bell"});
  LocalNoise ln;
  const LocalNoise* noise = local_noise(c, ln);
  RandomSource unused(0, 0);
  const StateVector plus = named_state("plus", 1, unused);

  ExperimentResult out;
  out.table.columns = {"panel", "test", "theta", "phi", "estimate", "std_error", "exact"};
  const RandomSource root = root_rng(c);
  auto point = [&](const std::string& panel, const std::string& test_name, int k, double theta,
                   double phi) {
    const StateVector other = StateVector::from_amplitudes(
        {std::cos(theta), std::polar(std::sin(theta), phi)});
    RandomSource rng = root.child(key({key_of(panel), key_of(test_name), static_cast<std::uint64_t>(k)}));
    const auto records =
        run_overlap_test(parse_overlap_test(test_name), plus, other, c.shots, noise, rng);
    const double p_hat = static_cast<double>(count_passes(records)) / c.shots;
    out.table.add({panel, test_name, theta, phi, 2.0 * p_hat - 1.0,
                   2.0 * std::sqrt(p_hat * (1.0 - p_hat) / c.shots), std::norm(overlap(plus, other))});
  };
  for (const auto& t : tests) {
    for (int k = 0; k < theta_points; ++k) point("theta", t, k, kPi * k / (theta_points - 1), 0.0);
    for (int k = 0; k < phi_points; ++k) point("phi", t, k, kPi / 4, 2.0 * kPi * k / (phi_points - 1));
  }
  return out;
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string to_csv(const Table& table) {
  std::ostringstream os;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              os << format_number(v);
            } else {
              os << v;
            }
          },
          row[i]);
    }
    os << '\n';
  }
  return os.str();
}

std::string to_json(const Table& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              // keep the CSV's digits so both formats agree
              obj[table.columns[i]] = std::stod(format_number(v));
            } else {
              obj[table.columns[i]] = v;
            }
          },
          row[i]);
    }
    rows.push_back(std::move(obj));
  }
  return Json{{"columns", table.columns}, {"rows", rows}}.dump(2) + "\n";
}

ExperimentResult execute(const ExperimentConfig& c, bool trace) {
  const std::string& e = c.experiment;
  if (e == "state-compare") return state_compare(c, trace);
  if (e == "comp-compare") return comp_compare(c);
  if (e == "hom") return hom(c);
  if (e == "model-sweep") return model_sweep(c);
  if (e == "stats") return stats_table(c, false);
  if (e == "fig7") return stats_table(c, true);
  if (e == "fig2d") return fig2d(c);
  if (e == "fig3") return sample_complexity(c, false);
  if (e == "fig6-supp") return sample_complexity(c, true);
  if (e == "fig4c") return fig4c(c);
  if (e == "fig5") return fig5(c);
  throw std::invalid_argument("unknown experiment '" + e + "'");
}

std::string version() { return QNV_VERSION; }

int write_run(const ExperimentConfig& config, bool trace, std::ostream& err) {
  namespace fs = std::filesystem;
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  try {
    result = execute(config, trace);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const fs::path out = config.output;
  try {
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    auto write = [](const fs::path& path, const std::string& text) {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
      f << text;
      if (!f) throw std::runtime_error("failed writing " + path.string());
    };
    write(out, config.format == "json" ? to_json(result.table) : to_csv(result.table));
    Json files = Json::array({out.filename().string()});
    for (const auto& [suffix, text] : result.attachments) {
      write(out.string() + suffix, text);
      files.push_back(out.filename().string() + suffix);
    }
    Json manifest;
    manifest["version"] = version();
    manifest["experiment"] = config.experiment;
    if (config.seed) manifest["seed"] = *config.seed;
    manifest["trace"] = trace;
    manifest["files"] = files;
    manifest["rows"] = result.table.rows.size();
    manifest["wall_time_s"] = wall;
    manifest["config"] = expand_config(config);
    write(out.string() + ".manifest.json", manifest.dump(2) + "\n");
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    std::error_code ec;
    fs::remove(out, ec);
    return 1;
  }
  return 0;
}

}  // namespace qnv::cli
