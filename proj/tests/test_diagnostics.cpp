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


#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "pprlab/diagnostics.hpp"
#include "pprlab/error.hpp"
#include "pprlab/rng.hpp"

using namespace pprlab;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::InvalidArgument;
}

// Dense P - Pbar with Pbar from the zero-diagonal expected adjacency.
double dense_deviation(const Graph& g, const PlantedGraphConfig& c) {
  const auto n = static_cast<Eigen::Index>(c.n);
  Eigen::MatrixXd abar(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const bool both = static_cast<std::size_t>(i) < c.m && static_cast<std::size_t>(j) < c.m;
      abar(i, j) = i == j ? 0.0 : (both ? c.q : c.p);
    }
  }
  Eigen::MatrixXd diff(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    diff.row(i) = -abar.row(i) / abar.row(i).sum();
    for (NodeId v : g.neighbors(static_cast<NodeId>(i))) {
      diff(i, v) += 1.0 / g.degree(static_cast<NodeId>(i));
    }
  }
  return Eigen::JacobiSVD<Eigen::MatrixXd>(diff).singularValues()(0);
}

}  // namespace

TEST_CASE("relative_l2") {
  const std::vector<double> a = {1.0, 0.0};
  const std::vector<double> b = {0.0, 1.0};
  CHECK(relative_l2(a, b) == doctest::Approx(std::sqrt(2.0)));
  CHECK(relative_l2(a, a) == 0.0);
  const std::vector<double> x = {0.2, 0.5, 0.3};
  const std::vector<double> y = {0.25, 0.45, 0.3};
  const std::vector<double> x10 = {2.0, 5.0, 3.0};
  const std::vector<double> y10 = {2.5, 4.5, 3.0};
  CHECK(relative_l2(x10, y10) == doctest::Approx(relative_l2(x, y)).epsilon(1e-14));
  const std::vector<double> zero = {0.0, 0.0};
  CHECK(code_of([&] { relative_l2(a, zero); }) == ErrorCode::ZeroNorm);
  CHECK(code_of([&] { relative_l2(a, x); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("concentration bound") {
  auto c = PlantedGraphConfig::log_squared(10000, 2000, 20, 1);
  CHECK(l2_concentration_bound(c, 0.0, 1.0).valid);
  CHECK(l2_concentration_bound(c, 0.0, 1.0).value == 0.0);
  const double root = std::sqrt(10000 * c.p / std::log(10000.0));
  const auto b = l2_concentration_bound(c, 0.8, 1.0);
  CHECK(b.valid);
  CHECK(b.value == doctest::Approx(0.8 / (0.2 * root - 0.8)).epsilon(1e-14));
  CHECK_FALSE(l2_concentration_bound(c, 0.99, 1.0).valid);
  CHECK(code_of([&] { l2_concentration_bound(c, 0.5, 0.0); }) == ErrorCode::InvalidArgument);
  double previous = 1e300;
  for (std::size_t n : {1000u, 10000u, 100000u, 1000000u}) {
    const auto v = l2_concentration_bound(PlantedGraphConfig::log_squared(n, n / 5, 1, 1), 0.8, 1.0);
    REQUIRE(v.valid);
    CHECK(v.value < previous);
    previous = v.value;
  }
}

TEST_CASE("concentration report at a moderate size") {
  const auto c = PlantedGraphConfig::log_squared(3000, 600, 20, 8);
  const auto r = concentration_report(c, 0.8);
  CHECK(r.rel_l2 > 0.0);
  CHECK(r.rel_l2 < 1.0);
  CHECK(r.bound.value == l2_concentration_bound(c, 0.8, 1.0).value);
}

TEST_CASE("spectral deviation") {
  PlantedGraphConfig complete{40, 10, 2, 1.0, 1.0, 3};
  CHECK(spectral_deviation(sample_planted_er(complete), complete) < 1e-7);

  for (std::uint64_t seed : {1u, 2u}) {
    PlantedGraphConfig c{200, 40, 4, 0.15, 0.3, seed};
    const Graph g = sample_planted_er(c);
    SpectralOptions tight;
    tight.tol = 1e-10;
    const double got = spectral_deviation(g, c, tight);
    const double want = dense_deviation(g, c);
    CHECK(got == doctest::Approx(want).epsilon(1e-6));
    CHECK(spectral_deviation(g, c) == doctest::Approx(want).epsilon(1e-4));
  }

  PlantedGraphConfig big{kSpectralMaxNodes + 1, 10, 1, 0.01, 0.02, 1};
  std::vector<Edge> path;
  for (NodeId v = 0; v + 1 < big.n; ++v) path.push_back({v, v + 1});
  CHECK(code_of([&] { spectral_deviation(Graph::from_edges(big.n, path), big); }) ==
        ErrorCode::SizeGuard);

  PlantedGraphConfig tiny{4, 2, 1, 0.5, 0.5, 1};
  std::vector<Edge> edges = {{0, 1}, {1, 2}};
  CHECK(code_of([&] { spectral_deviation(Graph::from_edges(4, edges), tiny); }) ==
        ErrorCode::DanglingNode);
}

TEST_CASE("concentration frequency") {
  const auto c = PlantedGraphConfig::log_squared(1000, 200, 5, 2);
  const auto mf = mean_field_ppr(c, 0.8);
  CHECK(concentration_frequency(expand(mf).values, mf, 1.0) == 0.0);
  auto shifted = expand(mf).values;
  for (std::size_t i = 0; i < 100; ++i) shifted[i] += 2.0 / 1000;
  CHECK(concentration_frequency(shifted, mf, 1.0) == doctest::Approx(0.1));
  CHECK(code_of([&] { concentration_frequency(shifted, mf, 0.0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("concentration probe") {
  const auto c = PlantedGraphConfig::log_squared(2000, 400, 2, 5);
  const double a = concentration_probe(c, 0.8, 0.1, 2);
  CHECK(a == concentration_probe(c, 0.8, 0.1, 2));
  CHECK(a >= 0.0);
  CHECK(a <= 1.0);
  CHECK(concentration_probe(c, 0.8, 0.1, 2) >= concentration_probe(c, 0.8, 1.0, 2));
  CHECK(code_of([&] { concentration_probe(c, 0.8, 1.0, 0); }) == ErrorCode::InvalidArgument);

  // Two seeds: a large fraction of nodes sits measurably away from the mean
  // field at the finer threshold.
  const auto sparse = PlantedGraphConfig::log_squared(10000, 2000, 2, 11);
  CHECK(concentration_probe(sparse, 0.8, 0.1, 2) > 0.5);
}

TEST_CASE("summary statistics") {
  const std::vector<double> xs = {1.0, 3.0, 2.0, 7.0, 4.0, 5.5};
  const auto s = summarize(xs);
  CHECK(s.count == 6);
  CHECK(s.mean == doctest::Approx(22.5 / 6));
  CHECK(s.mean_se == doctest::Approx(std::sqrt(s.variance / 6)));
  // Jackknife of the mean reproduces its standard error exactly.
  std::vector<double> loo;
  for (std::size_t i = 0; i < xs.size(); ++i) loo.push_back((22.5 - xs[i]) / 5);
  const double centre = sample_mean(loo);
  double acc = 0.0;
  for (double v : loo) acc += (v - centre) * (v - centre);
  CHECK(std::sqrt(5.0 / 6.0 * acc) == doctest::Approx(s.mean_se).epsilon(1e-12));
  CHECK(s.cov2 == doctest::Approx(s.variance / (s.mean * s.mean)));
  CHECK(s.cov2_se > 0.0);
  CHECK(s.variance_se > 0.0);
  const std::vector<double> constant(10, 0.98);
  CHECK(sample_mean(constant) == 0.98);
  const std::vector<double> two = {1.0, 2.0};
  CHECK(code_of([&] { summarize(two); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("coefficient of variation") {
  PlantedGraphConfig full{60, 12, 3, 1.0, 1.0, 4};
  const auto r = cov_estimate(full, 0.8, NodeClass::OutsideCommunity, 30);
  CHECK(r.node == 59);
  CHECK(r.replicates == 30);
  CHECK(r.summary.cov2 == doctest::Approx(0.0).epsilon(1e-20));
  CHECK(representative_node(full, NodeClass::InCommunityNonSeed) == 11);
  CHECK(code_of([&] { cov_estimate(full, 0.8, NodeClass::OutsideCommunity, 29); }) ==
        ErrorCode::InvalidArgument);
  PlantedGraphConfig all_seeds{60, 12, 12, 0.2, 0.4, 4};
  CHECK(code_of([&] { representative_node(all_seeds, NodeClass::InCommunityNonSeed); }) ==
        ErrorCode::InvalidArgument);
  CHECK(to_string(NodeClass::OutsideCommunity) == "outside_C");

  const std::vector<double> samples = {1.0, 1.2, 0.8, 1.1};
  const auto direct = cov_from_samples(NodeClass::InCommunityNonSeed, 7, samples);
  CHECK(direct.summary.cov2 == doctest::Approx(summarize(samples).cov2));
}

TEST_CASE("expectation bound") {
  const auto c = PlantedGraphConfig::log_squared(400, 80, 4, 9);
  const auto r = expectation_bound_check(c, 0.8, 40);
  CHECK(r.pass());
  CHECK(r.in_community.checked);
  CHECK(r.in_community.node == 79);
  CHECK(r.in_community.bound == doctest::Approx(1.0 / 76));
  CHECK(r.outside.node == 399);

  PlantedGraphConfig all_seeds = c;
  all_seeds.k = all_seeds.m;
  const auto skipped = expectation_bound_check(all_seeds, 0.8, 30);
  CHECK_FALSE(skipped.in_community.checked);
  CHECK(skipped.outside.checked);

  // With no walk at all, pi vanishes off the seeds.
  const auto lazy = expectation_bound_check(c, 0.0, 30);
  CHECK(lazy.in_community.mean == 0.0);
  CHECK(lazy.outside.mean == 0.0);
  CHECK(lazy.pass());
}
