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

#include "qnv/random.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qnv {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream_id) {
  return mix64(mix64(master_seed) ^ mix64(stream_id + 0x632be59bd9b4e019ULL));
}

}  // namespace

RandomSource::RandomSource(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      engine_(stream_seed(master_seed, stream_id)) {}

std::uint64_t RandomSource::next_u64() { return engine_(); }

double RandomSource::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomSource::below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("RandomSource::below: bound must be positive");
  }
  // Rejection sampling on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

bool RandomSource::bernoulli(double p) { return uniform() < p; }

double RandomSource::normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(theta);
  has_spare_normal_ = true;
  return r * std::cos(theta);
}

RandomSource RandomSource::child(std::uint64_t index) const {
  return RandomSource(stream_seed(master_seed_, stream_id_), index);
}

std::size_t sample_cdf(const std::vector<double>& cdf, RandomSource& rng) {
  if (cdf.empty() || !(cdf.back() > 0.0)) {
    throw std::invalid_argument("sample_cdf: empty or zero-mass table");
  }
  const double r = rng.uniform() * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
  if (it == cdf.end()) return cdf.size() - 1;
  return static_cast<std::size_t>(it - cdf.begin());
}

std::vector<double> cumulative(const std::vector<double>& weights) {
  std::vector<double> out(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    out[i] = acc;
  }
  return out;
}

RandomSource RandomSource::fork() {
  const std::uint64_t key = engine_();
  return RandomSource(key, stream_id_);
}

}  // namespace qnv
