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

#ifndef QNV_RANDOM_H_
#define QNV_RANDOM_H_

#include <cstdint>
#include <random>
#include <vector>

namespace qnv {

/// Deterministic pseudo-random stream identified by (master_seed, stream_id).
///
/// Two sources built from the same pair produce identical draws on every
/// platform: all distributions are implemented here on top of the raw 64-bit
/// engine output instead of the implementation-defined std distributions.
class RandomSource {
 public:
  RandomSource(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p);
  /// Standard normal via Box-Muller.
  double normal();

  /// Independent child stream keyed by `index`; does not advance this source.
  RandomSource child(std::uint64_t index) const;
  /// Fresh stream derived from the next draw of this source. Used to hand a
  /// batch of per-shot streams to a sub-task while advancing the parent.
  RandomSource fork();

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// Index drawn from a cumulative distribution table. `cdf` must be
/// non-decreasing with a positive last entry; the table need not be
/// normalized.
std::size_t sample_cdf(const std::vector<double>& cdf, RandomSource& rng);

/// Running sum of `weights`.
std::vector<double> cumulative(const std::vector<double>& weights);

/// SplitMix64 finalizer; exposed for seed derivation in tests and tools.
std::uint64_t mix64(std::uint64_t x);

}  // namespace qnv

#endif  // QNV_RANDOM_H_
