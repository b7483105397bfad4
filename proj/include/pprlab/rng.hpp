// Copyright 2026 The pprlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPRLAB_RNG_HPP_
#define PPRLAB_RNG_HPP_

#include <cstdint>
#include <random>

namespace pprlab {

/// SplitMix64 finalizer. Bijective on 64-bit words; used to decorrelate
/// user-visible seeds before they reach the generator.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of the replica stream `index` under `master`:
/// mix64(master ^ mix64(index + 0x9E3779B97F4A7C15)).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Reproducible random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; all distributions used by the library
/// are implemented here rather than taken from <random>, whose distribution
/// algorithms differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Number of failures before the first success of a Bernoulli(prob)
  /// sequence, for 0 < prob < 1. `log_complement` is log1p(-prob), hoisted
  /// by callers that draw many skips at the same rate.
  std::uint64_t geometric_skip(double log_complement);

 private:
  std::mt19937_64 engine_;
};

}  // namespace pprlab

#endif  // PPRLAB_RNG_HPP_
