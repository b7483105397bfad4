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

#include "pprlab/stats.hpp"

#include <cmath>
#include <vector>

#include "pprlab/error.hpp"

namespace pprlab {

double sample_mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  // Accumulate deviations from the first sample: exact for constant data.
  const double shift = xs[0];
  double total = 0.0;
  for (double x : xs) total += x - shift;
  return shift + total / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = sample_mean(xs);
  double total = 0.0;
  for (double x : xs) total += (x - mean) * (x - mean);
  return total / static_cast<double>(xs.size() - 1);
}

double standard_error(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  return std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
}

namespace {

double jackknife_se(const std::vector<double>& leave_one_out) {
  const auto r = static_cast<double>(leave_one_out.size());
  const double centre = sample_mean(leave_one_out);
  double total = 0.0;
  for (double x : leave_one_out) total += (x - centre) * (x - centre);
  return std::sqrt((r - 1.0) / r * total);
}

}  // namespace

SampleSummary summarize(std::span<const double> xs) {
  require(xs.size() >= 3, ErrorCode::InvalidArgument, "summary needs at least 3 samples");
  SampleSummary out;
  out.count = xs.size();
  out.mean = sample_mean(xs);
  out.mean_se = standard_error(xs);
  out.variance = sample_variance(xs);
  out.cov2 = out.mean != 0.0 ? out.variance / (out.mean * out.mean) : 0.0;

  std::vector<double> held(xs.size() - 1);
  std::vector<double> variances(xs.size());
  std::vector<double> cov2s(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t t = 0; t < xs.size(); ++t) {
      if (t != i) held[j++] = xs[t];
    }
    const double mean = sample_mean(held);
    variances[i] = sample_variance(held);
    cov2s[i] = mean != 0.0 ? variances[i] / (mean * mean) : 0.0;
  }
  out.variance_se = jackknife_se(variances);
  out.cov2_se = jackknife_se(cov2s);
  return out;
}

}  // namespace pprlab
