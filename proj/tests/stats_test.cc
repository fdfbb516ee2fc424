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
#include <numeric>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "qnv/stats.h"

namespace qnv {
namespace {

const double kPSucc = (1.0 + std::cos(std::numbers::pi / 4)) / 2.0;

TEST(Hoeffding, SampleCounts) {
  EXPECT_EQ(hoeffding_samples(0.05, 0.05), 2952u);
  EXPECT_EQ(hoeffding_samples(1.0, 2.0 * std::exp(-1.0)), 2u);
  // halving epsilon quadruples the bound before rounding
  const double raw1 = 2.0 * std::log(2.0 / 0.01) / (0.1 * 0.1);
  const double raw2 = 2.0 * std::log(2.0 / 0.01) / (0.05 * 0.05);
  EXPECT_NEAR(raw2 / raw1, 4.0, 1e-12);
  EXPECT_EQ(hoeffding_samples(0.1, 0.01), static_cast<std::uint64_t>(std::ceil(raw1)));
  EXPECT_EQ(hoeffding_samples(0.05, 0.01), static_cast<std::uint64_t>(std::ceil(raw2)));
}

TEST(Hoeffding, EpsilonValuesAndRoundTrip) {
  EXPECT_NEAR(hoeffding_epsilon(10000, 0.05), std::sqrt(2.0 * std::log(40.0) / 1e4), 1e-15);
  EXPECT_NEAR(hoeffding_epsilon(10000, 0.05), 0.02716, 1e-5);
  const double alpha = 2.0 * std::exp(-3.0);  // 2 ln(2/alpha) = 6
  EXPECT_NEAR(hoeffding_epsilon(6, alpha), 1.0, 1e-12);
  for (double eps : {0.3, 0.1, 0.01}) {
    for (double a : {0.1, 0.05, 0.01}) {
      EXPECT_LE(hoeffding_epsilon(hoeffding_samples(eps, a), a), eps);
    }
  }
  EXPECT_THROW(hoeffding_samples(0.0, 0.05), std::invalid_argument);
}

TEST(NormalQuantile, MatchesTabulatedAndBoost) {
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-9);
  EXPECT_NEAR(normal_quantile(0.995), 2.5758293035489004, 1e-9);
  EXPECT_NEAR(normal_quantile(0.5), 0.0, 1e-12);
  const boost::math::normal_distribution<> nd;
  for (double p = 1e-8; p < 1.0; p = p < 0.01 ? p * 3 : p + 0.0137) {
    EXPECT_NEAR(normal_quantile(p), boost::math::quantile(nd, p), 1e-9 * std::max(1.0, std::abs(boost::math::quantile(nd, p))))
        << p;
  }
}

TEST(ClopperPearson, AllPassClosedForm) {
  const ConfidenceInterval ci = clopper_pearson(100, 100, 0.05);
  EXPECT_NEAR(ci.lower, std::pow(0.025, 0.01), 1e-10);
  EXPECT_NEAR(ci.lower, 0.963783, 1e-6);
  EXPECT_DOUBLE_EQ(ci.upper, 1.0);
}

TEST(ClopperPearson, NoPassMirror) {
  const ConfidenceInterval ci = clopper_pearson(0, 100, 0.05);
  EXPECT_DOUBLE_EQ(ci.lower, 0.0);
  EXPECT_NEAR(ci.upper, 1.0 - std::pow(0.025, 0.01), 1e-10);
}

TEST(ClopperPearson, MatchesBetaQuantiles) {
  RandomSource rng(1, 0);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t m = 1 + rng.below(5000);
    const std::uint64_t k = rng.below(m + 1);
    const double alpha = 0.001 + 0.2 * rng.uniform();
    const ConfidenceInterval ci = clopper_pearson(k, m, alpha);
    const double lo = k == 0 ? 0.0 : boost::math::ibeta_inv(double(k), double(m - k + 1), alpha / 2);
    const double hi = k == m ? 1.0 : boost::math::ibeta_inv(double(k + 1), double(m - k), 1 - alpha / 2);
    EXPECT_NEAR(ci.lower, lo, 1e-9) << k << "/" << m;
    EXPECT_NEAR(ci.upper, hi, 1e-9) << k << "/" << m;
    EXPECT_TRUE(ci.contains(double(k) / m));
  }
}

TEST(ClopperPearson, TailResidualsVanish) {
  for (auto [k, m] : {std::pair<std::uint64_t, std::uint64_t>{750, 1000}, {3, 40}, {99990, 100000}}) {
    const double alpha = 0.05;
    const ConfidenceInterval ci = clopper_pearson(k, m, alpha);
    EXPECT_LT(std::abs(binomial_upper_tail(k, m, ci.lower) - alpha / 2), 1e-10);
    EXPECT_LT(std::abs(binomial_lower_tail(k, m, ci.upper) - alpha / 2), 1e-10);
  }
}

TEST(ClopperPearson, CoverageAtLeastNominal) {
  for (double p : {0.1, 0.5, 0.85, 0.99}) {
    for (std::uint64_t m : {100ull, 1000ull, 10000ull}) {
      RandomSource rng(2, m);
      const CoverageResult c = cp_coverage(p, m, 0.05, 4000, rng);
      EXPECT_GE(c.coverage + 3 * std::max(c.std_error, std::sqrt(0.05 * 0.95 / 4000)), 0.95)
          << p << " " << m;
    }
  }
}

TEST(ExpectedWidth, SingleShotAndOrdering) {
  EXPECT_NEAR(expected_cp_width(1, 1.0, 0.05), 0.975, 1e-10);
  double last = 1.0;
  for (std::uint64_t m = 100; m <= 1000000; m *= 10) {
    for (double alpha : {0.1, 0.05, 0.01}) {
      const double cp = expected_cp_width(m, kPSucc, alpha);
      EXPECT_GT(cp, 0.0);
      EXPECT_LE(cp, hoeffding_epsilon(m, alpha));
      if (m >= 1000) {
        EXPECT_LE(expected_wald_width(m, kPSucc, alpha), cp);
      }
    }
    const double w = expected_cp_width(m, kPSucc, 0.05);
    EXPECT_LT(w, last);
    last = w;
  }
}

TEST(ExpectedWidth, FrozenValues) {
  EXPECT_NEAR(expected_cp_width(100, kPSucc, 0.05), 0.14616, 1e-5);
  EXPECT_NEAR(expected_cp_width(1000000, kPSucc, 0.05), 0.001387, 1e-6);
  EXPECT_NEAR(expected_wald_width(100, kPSucc, 0.05), 0.13717, 1e-5);
}

TEST(Wald, HalfWidthAndDegenerate) {
  const ConfidenceInterval ci = wald_interval(50, 100, 0.05);
  EXPECT_NEAR((ci.upper - ci.lower) / 2, 1.959963984540054 * 0.05, 1e-9);
  const ConfidenceInterval full = wald_interval(100, 100, 0.05);
  EXPECT_DOUBLE_EQ(full.width(), 0.0);
  EXPECT_DOUBLE_EQ(full.estimate, 1.0);
}

TEST(FidelityInterval, AffineMapOfProbabilityInterval) {
  const ConfidenceInterval f = fidelity_interval(100, 100, 0.05, IntervalMethod::kClopperPearson);
  EXPECT_NEAR(f.lower, 2 * std::pow(0.025, 0.01) - 1, 1e-10);
  EXPECT_NEAR(f.lower, 0.927567, 1e-6);
  EXPECT_DOUBLE_EQ(f.upper, 1.0);
  const ConfidenceInterval p = probability_interval(700, 1000, 0.05, IntervalMethod::kHoeffding);
  const ConfidenceInterval h = fidelity_interval(700, 1000, 0.05, IntervalMethod::kHoeffding);
  EXPECT_DOUBLE_EQ(h.upper - h.lower, 2.0 * (p.upper - p.lower));
  EXPECT_DOUBLE_EQ(h.estimate, 2.0 * 0.7 - 1.0);
}

TEST(FidelityInterval, RecordsOverload) {
  std::vector<TrialRecord> recs(10);
  for (int i = 0; i < 7; ++i) recs[i].pass = true;
  const ConfidenceInterval a = fidelity_interval(recs, 0.1, IntervalMethod::kWald);
  const ConfidenceInterval b = fidelity_interval(7, 10, 0.1, IntervalMethod::kWald);
  EXPECT_DOUBLE_EQ(a.lower, b.lower);
  EXPECT_DOUBLE_EQ(a.upper, b.upper);
}

TEST(FidelityInterval, CoverageAtHalfFidelity) {
  // F = 0.5 means p = 0.75.
  RandomSource rng(3, 0);
  int covered = 0;
  const int experiments = 1000;
  for (int e = 0; e < experiments; ++e) {
    const std::uint64_t k = sample_binomial(1000, 0.75, rng);
    covered += fidelity_interval(k, 1000, 0.05, IntervalMethod::kClopperPearson).contains(0.5);
  }
  EXPECT_GE(covered, 950 - 3 * std::sqrt(1000 * 0.05 * 0.95));
}

TEST(Bootstrap, ConstantAndBernoulli) {
  RandomSource rng(4, 0);
  std::vector<double> c(50, 3.0);
  EXPECT_DOUBLE_EQ(bootstrap_stderr(c, 200, rng), 0.0);
  std::vector<double> v(1000);
  for (int i = 0; i < 500; ++i) v[i] = 1.0;
  const double se = bootstrap_stderr(v, 10000, rng);
  EXPECT_NEAR(se, std::sqrt(0.25 / 1000), 0.1 * std::sqrt(0.25 / 1000));
  EXPECT_THROW(bootstrap_stderr(v, 10, rng), std::invalid_argument);
}

TEST(Bootstrap, SameSeedSameResult) {
  std::vector<double> v = {0.1, 0.5, 0.2, 0.9, 0.4};
  RandomSource a(5, 0), b(5, 0);
  EXPECT_EQ(bootstrap_stderr(v, 500, a), bootstrap_stderr(v, 500, b));
}

TEST(BinomialSampler, MomentsMatch) {
  for (auto [m, p] : {std::pair<std::uint64_t, double>{20, 0.3}, {5000, 0.85}, {1000000, 0.5}}) {
    RandomSource rng(6, m);
    const BinomialSampler draw(m, p);
    const int n = 20000;
    double sum = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(draw(rng));
      sum += k;
      sq += k * k;
    }
    const double mean = sum / n, var = sq / n - mean * mean;
    const double true_var = m * p * (1 - p);
    EXPECT_NEAR(mean, m * p, 5 * std::sqrt(true_var / n));
    EXPECT_NEAR(var / true_var, 1.0, 5 * std::sqrt(2.0 / n));
  }
}

TEST(Intervals, ShrinkWithSamples) {
  double last_h = 1, last_c = 1;
  for (std::uint64_t m = 100; m <= 1000000; m *= 10) {
    const std::uint64_t k = static_cast<std::uint64_t>(std::llround(kPSucc * m));
    const double h = hoeffding_interval(k, m, 0.05).width();
    const double c = clopper_pearson(k, m, 0.05).width();
    EXPECT_LT(h, last_h);
    EXPECT_LT(c, last_c);
    last_h = h;
    last_c = c;
  }
}

TEST(Intervals, MethodNames) {
  EXPECT_EQ(parse_interval_method("cp"), IntervalMethod::kClopperPearson);
  EXPECT_EQ(parse_interval_method(interval_method_name(IntervalMethod::kWald)), IntervalMethod::kWald);
  EXPECT_THROW(parse_interval_method("bayes"), std::invalid_argument);
}

}  // namespace
}  // namespace qnv
