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

#ifndef PPRLAB_STATS_HPP_
#define PPRLAB_STATS_HPP_

#include <cstddef>
#include <span>

namespace pprlab {

double sample_mean(std::span<const double> xs);
/// Unbiased sample variance; 0 for fewer than two samples.
double sample_variance(std::span<const double> xs);
/// Standard error of the mean, sqrt(var / R).
double standard_error(std::span<const double> xs);

struct SampleSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double mean_se = 0.0;
  double variance = 0.0;
  double variance_se = 0.0;
  /// Var / mean^2, the squared coefficient of variation.
  double cov2 = 0.0;
  double cov2_se = 0.0;
};

/// Mean, variance and squared coefficient of variation with leave-one-out
/// jackknife standard errors for the latter two. Needs at least 3 samples.
SampleSummary summarize(std::span<const double> xs);

}  // namespace pprlab

#endif  // PPRLAB_STATS_HPP_
