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
#include <cfloat>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "qnv/stats.h"

namespace qnv {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

void check_counts(std::uint64_t m_p, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("need at least one trial");
  if (m_p > m) throw std::invalid_argument("more passes than trials");
}

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
}

double log_pmf(std::uint64_t k, std::uint64_t m, double p) {
  if (p == 0.0) return k == 0 ? 0.0 : -INFINITY;
  if (p == 1.0) return k == m ? 0.0 : -INFINITY;
  const double kk = static_cast<double>(k), mm = static_cast<double>(m);
  return std::lgamma(mm + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(mm - kk + 1.0) +
         kk * std::log(p) + (mm - kk) * std::log1p(-p);
}

// Root of a decreasing f on [lo, hi] with f(lo) > 0 > f(hi). Alternates a
// false-position step with a bisection step so the bracket at least halves
// every second iteration.
template <typename F>
double solve_decreasing(F f, double lo, double hi) {
  double flo = f(lo), fhi = f(hi);
  for (int iter = 0; iter < 600; ++iter) {
    if (hi - lo <= 4.0 * DBL_EPSILON * hi + DBL_MIN) break;
    double x = 0.5 * (lo + hi);
    if (iter % 2 == 0 && std::isfinite(flo) && std::isfinite(fhi) && flo != fhi) {
      const double s = hi - fhi * (hi - lo) / (fhi - flo);
      if (s > lo && s < hi) x = s;
    }
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fx > 0.0) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
  }
  return 0.5 * (lo + hi);
}

// Narrow [0, 1] around p_hat when the normal approximation brackets the
// root; otherwise keep the full range.
template <typename F>
std::pair<double, double> bracket(F f, double p_hat, std::uint64_t m) {
  const double sd = std::sqrt(std::max(p_hat * (1.0 - p_hat), 1.0 / m) / m);
  const double lo = std::max(0.0, p_hat - 12.0 * sd - 1.0 / m);
  const double hi = std::min(1.0, p_hat + 12.0 * sd + 1.0 / m);
  const bool ok = f(lo) > 0.0 && f(hi) < 0.0;
  return ok ? std::make_pair(lo, hi) : std::make_pair(0.0, 1.0);
}

}  // namespace

std::string interval_method_name(IntervalMethod method) {
  switch (method) {
    case IntervalMethod::kHoeffding: return "hoeffding";
    case IntervalMethod::kClopperPearson: return "clopper_pearson";
    case IntervalMethod::kWald: return "wald";
  }
  return "?";
}

IntervalMethod parse_interval_method(const std::string& name) {
  if (name == "hoeffding") return IntervalMethod::kHoeffding;
  if (name == "clopper_pearson" || name == "cp") return IntervalMethod::kClopperPearson;
  if (name == "wald") return IntervalMethod::kWald;
  throw std::invalid_argument("unknown interval method '" + name +
                              "' (expected hoeffding|clopper_pearson|wald)");
}

std::uint64_t hoeffding_samples(double epsilon, double alpha) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  check_alpha(alpha);
  return static_cast<std::uint64_t>(std::ceil(2.0 * std::log(2.0 / alpha) / (epsilon * epsilon)));
}

double hoeffding_epsilon(std::uint64_t m, double alpha) {
  if (m == 0) throw std::invalid_argument("need at least one sample");
  check_alpha(alpha);
  return std::sqrt(2.0 * std::log(2.0 / alpha) / static_cast<double>(m));
}

double binomial_lower_tail(std::uint64_t k, std::uint64_t m, double p) {
  check_p(p);
  if (k >= m) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;
  const double q = 1.0 - p;
  if (static_cast<double>(k) >= static_cast<double>(m) * p) {
    return 1.0 - binomial_upper_tail(k + 1, m, p);
  }
  double term = 1.0, sum = 1.0;
  for (std::uint64_t j = k; j >= 1; --j) {
    term *= static_cast<double>(j) / static_cast<double>(m - j + 1) * (q / p);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::min(1.0, std::exp(log_pmf(k, m, p) + std::log(sum)));
}

double binomial_upper_tail(std::uint64_t k, std::uint64_t m, double p) {
  check_p(p);
  if (k == 0) return 1.0;
  if (k > m) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  const double q = 1.0 - p;
  if (static_cast<double>(k) <= static_cast<double>(m) * p) {
    return 1.0 - binomial_lower_tail(k - 1, m, p);
  }
  double term = 1.0, sum = 1.0;
  for (std::uint64_t j = k; j < m; ++j) {
    term *= static_cast<double>(m - j) / static_cast<double>(j + 1) * (p / q);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::min(1.0, std::exp(log_pmf(k, m, p) + std::log(sum)));
}

ConfidenceInterval clopper_pearson(std::uint64_t m_p, std::uint64_t m, double alpha) {
  check_counts(m_p, m);
  check_alpha(alpha);
  const double target = std::log(alpha / 2.0);
  const double p_hat = static_cast<double>(m_p) / static_cast<double>(m);
  ConfidenceInterval ci;
  ci.estimate = p_hat;
  ci.level = 1.0 - alpha;
  ci.method = IntervalMethod::kClopperPearson;
  if (m_p == 0) {
    ci.lower = 0.0;
  } else {
    // P(X >= m_p) grows with p
    auto f = [&](double p) { return target - std::log(binomial_upper_tail(m_p, m, p)); };
    const auto [lo, hi] = bracket(f, p_hat, m);
    ci.lower = solve_decreasing(f, lo, hi);
  }
  if (m_p == m) {
    ci.upper = 1.0;
  } else {
    auto f = [&](double p) { return std::log(binomial_lower_tail(m_p, m, p)) - target; };
    const auto [lo, hi] = bracket(f, p_hat, m);
    ci.upper = solve_decreasing(f, lo, hi);
  }
  ci.lower = std::min(ci.lower, p_hat);
  ci.upper = std::max(ci.upper, p_hat);
  return ci;
}

namespace {

// Binomial-weighted sum of width(j) over j within 12 sd of the mean.
template <typename Width>
double expected_width(std::uint64_t m, double p, Width width) {
  if (m == 0) throw std::invalid_argument("need at least one trial");
  check_p(p);
  if (p == 0.0) return width(0);
  if (p == 1.0) return width(m);
  const double mean = static_cast<double>(m) * p;
  const double sd = std::sqrt(mean * (1.0 - p));
  const double span = 12.0 * sd + 2.0;
  const auto lo = static_cast<std::uint64_t>(std::max(0.0, std::floor(mean - span)));
  const auto hi = static_cast<std::uint64_t>(
      std::min(static_cast<double>(m), std::ceil(mean + span)));
  double total = 0.0;
  for (std::uint64_t j = lo; j <= hi; ++j) {
    const double w = std::exp(log_pmf(j, m, p));
    if (w > 0.0) total += w * width(j);
  }
  return total;
}

}  // namespace

double expected_cp_width(std::uint64_t m, double p_succ, double alpha) {
  check_alpha(alpha);
  return expected_width(m, p_succ,
                        [&](std::uint64_t j) { return clopper_pearson(j, m, alpha).width(); });
}

ConfidenceInterval wald_interval(std::uint64_t m_p, std::uint64_t m, double alpha) {
  check_counts(m_p, m);
  check_alpha(alpha);
  const double p_hat = static_cast<double>(m_p) / static_cast<double>(m);
  const double half =
      normal_quantile(1.0 - alpha / 2.0) * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(m));
  return {p_hat, std::max(0.0, p_hat - half), std::min(1.0, p_hat + half), 1.0 - alpha,
          IntervalMethod::kWald};
}

double expected_wald_width(std::uint64_t m, double p_succ, double alpha) {
  check_alpha(alpha);
  return expected_width(m, p_succ,
                        [&](std::uint64_t j) { return wald_interval(j, m, alpha).width(); });
}

ConfidenceInterval hoeffding_interval(std::uint64_t m_p, std::uint64_t m, double alpha) {
  check_counts(m_p, m);
  const double p_hat = static_cast<double>(m_p) / static_cast<double>(m);
  const double half = 0.5 * hoeffding_epsilon(m, alpha);
  return {p_hat, std::max(0.0, p_hat - half), std::min(1.0, p_hat + half), 1.0 - alpha,
          IntervalMethod::kHoeffding};
}

ConfidenceInterval probability_interval(std::uint64_t m_p, std::uint64_t m, double alpha,
                                        IntervalMethod method) {
  switch (method) {
    case IntervalMethod::kHoeffding: return hoeffding_interval(m_p, m, alpha);
    case IntervalMethod::kClopperPearson: return clopper_pearson(m_p, m, alpha);
    case IntervalMethod::kWald: return wald_interval(m_p, m, alpha);
  }
  throw std::logic_error("unhandled interval method");
}

ConfidenceInterval fidelity_interval(std::uint64_t passes, std::uint64_t shots, double alpha,
                                     IntervalMethod method) {
  ConfidenceInterval ci = probability_interval(passes, shots, alpha, method);
  ci.estimate = 2.0 * ci.estimate - 1.0;
  ci.lower = 2.0 * ci.lower - 1.0;
  ci.upper = 2.0 * ci.upper - 1.0;
  return ci;
}

ConfidenceInterval fidelity_interval(std::span<const TrialRecord> records, double alpha,
                                     IntervalMethod method) {
  if (records.empty()) throw std::invalid_argument("fidelity interval of an empty record set");
  return fidelity_interval(count_passes(records), records.size(), alpha, method);
}

double bootstrap_stderr(std::span<const double> values, int resamples, RandomSource& rng) {
  if (values.size() < 2) throw std::invalid_argument("bootstrap needs at least two values");
  if (resamples < 100) throw std::invalid_argument("bootstrap needs at least 100 resamples");
  const std::size_t n = values.size();
  std::vector<double> means(resamples);
  for (double& mean : means) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += values[rng.below(n)];
    mean = s / static_cast<double>(n);
  }
  double mu = 0.0;
  for (double m : means) mu += m;
  mu /= resamples;
  double var = 0.0;
  for (double m : means) var += (m - mu) * (m - mu);
  return std::sqrt(var / (resamples - 1));
}

BinomialSampler::BinomialSampler(std::uint64_t m, double p) : m_(m), p_(p) {
  check_p(p);
  if (m <= 64 || p == 0.0 || p == 1.0) return;
  const double mean = static_cast<double>(m) * p;
  const double sd = std::sqrt(mean * (1.0 - p));
  const double lo = std::max(0.0, std::floor(mean - 12.0 * sd - 2.0));
  const double hi = std::min(static_cast<double>(m), std::ceil(mean + 12.0 * sd + 2.0));
  first_ = static_cast<std::uint64_t>(lo);
  const double lm = std::lgamma(static_cast<double>(m) + 1.0);
  double acc = 0.0;
  for (double j = lo; j <= hi; j += 1.0) {
    acc += std::exp(lm - std::lgamma(j + 1.0) - std::lgamma(static_cast<double>(m) - j + 1.0) +
                    j * std::log(p) + (static_cast<double>(m) - j) * std::log1p(-p));
    cdf_.push_back(acc);
  }
}

std::uint64_t BinomialSampler::operator()(RandomSource& rng) const {
  if (cdf_.empty()) {
    std::uint64_t k = 0;
    for (std::uint64_t i = 0; i < m_; ++i) k += rng.bernoulli(p_);
    return k;
  }
  return first_ + sample_cdf(cdf_, rng);
}

std::uint64_t sample_binomial(std::uint64_t m, double p, RandomSource& rng) {
  return BinomialSampler(m, p)(rng);
}

CoverageResult cp_coverage(double p, std::uint64_t m, double alpha, std::size_t experiments,
                           RandomSource& rng) {
  check_p(p);
  if (experiments == 0) throw std::invalid_argument("coverage needs at least one experiment");
  std::unordered_map<std::uint64_t, bool> hit;
  std::size_t covered = 0;
  const BinomialSampler draw(m, p);
  for (std::size_t e = 0; e < experiments; ++e) {
    const std::uint64_t k = draw(rng);
    auto it = hit.find(k);
    if (it == hit.end()) it = hit.emplace(k, clopper_pearson(k, m, alpha).contains(p)).first;
    covered += it->second;
  }
  CoverageResult r;
  r.experiments = experiments;
  r.coverage = static_cast<double>(covered) / static_cast<double>(experiments);
  r.std_error = std::sqrt(r.coverage * (1.0 - r.coverage) / static_cast<double>(experiments));
  return r;
}

}  // namespace qnv
