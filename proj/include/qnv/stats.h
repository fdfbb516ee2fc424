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

#ifndef QNV_STATS_H_
#define QNV_STATS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qnv/overlap.h"
#include "qnv/random.h"

namespace qnv {

enum class IntervalMethod { kHoeffding, kClopperPearson, kWald };

std::string interval_method_name(IntervalMethod method);
/// Accepts "hoeffding", "clopper_pearson" (or "cp"), "wald".
IntervalMethod parse_interval_method(const std::string& name);

struct ConfidenceInterval {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0;  // 1 - alpha
  IntervalMethod method = IntervalMethod::kClopperPearson;

  double width() const { return upper - lower; }
  bool contains(double x) const { return lower <= x && x <= upper; }
};

/// Smallest m with 2 exp(-m eps^2 / 2) <= alpha, i.e. ceil(2 ln(2/alpha) / eps^2).
std::uint64_t hoeffding_samples(double epsilon, double alpha);
/// sqrt(2 ln(2/alpha) / m): the Hoeffding half-width on the fidelity, which
/// equals the full interval width on the pass probability.
double hoeffding_epsilon(std::uint64_t m, double alpha);

/// Standard normal quantile. Rational approximation plus one Halley step;
/// absolute error below 1e-9 on (0, 1).
double normal_quantile(double p);

/// P(X <= k) and P(X >= k) for X ~ Binomial(m, p), summed in log space from
/// the tail side.
double binomial_lower_tail(std::uint64_t k, std::uint64_t m, double p);
double binomial_upper_tail(std::uint64_t k, std::uint64_t m, double p);

/// Exact interval on the pass probability: the lower bound solves
/// P(X >= m_p) = alpha/2, the upper bound P(X <= m_p) = alpha/2, with
/// lower = 0 at m_p = 0 and upper = 1 at m_p = m.
ConfidenceInterval clopper_pearson(std::uint64_t m_p, std::uint64_t m, double alpha);

/// sum_j Binom(j; m, p) [upper(j) - lower(j)] of the Clopper-Pearson interval.
/// Terms more than 12 standard deviations from the mean are dropped.
double expected_cp_width(std::uint64_t m, double p_succ, double alpha);

/// p_hat +- z sqrt(p_hat (1 - p_hat) / m), clamped to [0, 1]. Zero width
/// when p_hat is 0 or 1.
ConfidenceInterval wald_interval(std::uint64_t m_p, std::uint64_t m, double alpha);
double expected_wald_width(std::uint64_t m, double p_succ, double alpha);

/// Interval on the pass probability by Hoeffding: p_hat +- eps/2, clamped.
ConfidenceInterval hoeffding_interval(std::uint64_t m_p, std::uint64_t m, double alpha);

ConfidenceInterval probability_interval(std::uint64_t m_p, std::uint64_t m, double alpha,
                                        IntervalMethod method);

/// Interval on F = 2p - 1 mapped from the pass-probability interval.
ConfidenceInterval fidelity_interval(std::uint64_t passes, std::uint64_t shots, double alpha,
                                     IntervalMethod method);
ConfidenceInterval fidelity_interval(std::span<const TrialRecord> records, double alpha,
                                     IntervalMethod method);

/// Standard deviation of the means of `resamples` bootstrap resamples.
double bootstrap_stderr(std::span<const double> values, int resamples, RandomSource& rng);

/// Inverse-CDF sampler for Binomial(m, p). Small m sums Bernoulli draws;
/// larger m tabulates the pmf over mean +- 12 sd (mass outside is below
/// 1e-30) and draws one uniform per sample.
class BinomialSampler {
 public:
  BinomialSampler(std::uint64_t m, double p);
  std::uint64_t operator()(RandomSource& rng) const;

 private:
  std::uint64_t m_;
  double p_;
  std::uint64_t first_ = 0;
  std::vector<double> cdf_;
};

/// One draw of Binomial(m, p). Builds a sampler per call.
std::uint64_t sample_binomial(std::uint64_t m, double p, RandomSource& rng);

struct CoverageResult {
  double coverage = 0.0;
  double std_error = 0.0;
  std::size_t experiments = 0;
};

/// Fraction of simulated experiments whose Clopper-Pearson interval holds p.
CoverageResult cp_coverage(double p, std::uint64_t m, double alpha, std::size_t experiments,
                           RandomSource& rng);

}  // namespace qnv

#endif  // QNV_STATS_H_
