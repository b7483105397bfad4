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


#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "pprlab/error.hpp"
#include "pprlab/graph.hpp"
#include "pprlab/ppr.hpp"
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

// Plain Gaussian elimination on pi (I - alpha P) = (1 - alpha) nu, written
// out independently of the library. Degree-0 rows of P are nu.
std::vector<double> gauss_ppr(const Graph& g, const std::vector<double>& nu, double alpha) {
  const std::size_t n = g.num_nodes();
  // Column-major system A x = b with A = (I - alpha P)^T.
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1.0;
  for (NodeId u = 0; u < n; ++u) {
    if (g.degree(u) == 0) {
      for (std::size_t v = 0; v < n; ++v) a[v][u] -= alpha * nu[v];
    } else {
      for (NodeId v : g.neighbors(u)) a[v][u] -= alpha / g.degree(u);
    }
  }
  for (std::size_t i = 0; i < n; ++i) a[i][n] = (1.0 - alpha) * nu[i];
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

double linf(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

}  // namespace

TEST_CASE("iteration and dense oracle agree with elimination") {
  for (std::uint64_t s = 0; s < 12; ++s) {
    const std::size_t n = 20 + 10 * s;
    PlantedGraphConfig c{n, n / 3, 1 + s % 4, 0.05 + 0.02 * s, 0.3, derive_seed(5, s)};
    const Graph g = sample_planted_er(c);
    const auto nu = restart_vector(c);
    for (double alpha : {0.0, 0.3, 0.85, 0.99}) {
      const auto want = gauss_ppr(g, nu.dense(n), alpha);
      CHECK(linf(ppr_iterate(g, nu, alpha).values, want) < 1e-11);
      CHECK(linf(ppr_dense_oracle(g, nu, alpha).values, want) < 1e-12);
    }
  }
}

TEST_CASE("PPR is a probability vector and alpha = 0 returns nu") {
  const auto c = PlantedGraphConfig::log_squared(300, 60, 6, 2);
  const Graph g = sample_planted_er(c);
  const auto nu = restart_vector(c);
  const auto pi = ppr_iterate(g, nu, 0.9);
  CHECK(pi.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*std::min_element(pi.values.begin(), pi.values.end()) >= 0.0);
  CHECK(pi.kind == ScoreKind::Exact);
  CHECK(linf(ppr_iterate(g, nu, 0.0).values, nu.dense(300)) == 0.0);
}

TEST_CASE("dangling nodes restart through nu") {
  // Node 3 is isolated; node 2 hangs off node 0.
  std::vector<Edge> edges = {{0, 1}, {0, 2}};
  const Graph g = Graph::from_edges(4, edges);
  const RestartVector nu{NodeSet::from_ids({3})};
  const auto want = gauss_ppr(g, nu.dense(4), 0.7);
  const auto pi = ppr_iterate(g, nu, 0.7);
  CHECK(linf(pi.values, want) < 1e-12);
  // From an isolated seed the walk can never leave it.
  CHECK(pi[3] == doctest::Approx(1.0));
  CHECK(pi.sum() == doctest::Approx(1.0));
}

TEST_CASE("single-seed PPR satisfies the reversibility identity") {
  // pi_u(v) / d(v) = pi_v(u) / d(u) on undirected graphs.
  const auto c = PlantedGraphConfig::log_squared(120, 30, 1, 9);
  const Graph g = sample_planted_er(c);
  for (auto [u, v] : {std::pair<NodeId, NodeId>{0, 5}, {7, 100}, {40, 41}}) {
    const auto pu = ppr_iterate(g, RestartVector{NodeSet::from_ids({u})}, 0.8);
    const auto pv = ppr_iterate(g, RestartVector{NodeSet::from_ids({v})}, 0.8);
    CHECK(pu[v] / g.degree(v) == doctest::Approx(pv[u] / g.degree(u)).epsilon(1e-9));
  }
}

TEST_CASE("truncated PPR") {
  const auto c = PlantedGraphConfig::log_squared(200, 40, 4, 3);
  const Graph g = sample_planted_er(c);
  const auto nu = restart_vector(c);
  const double alpha = 0.6;
  for (int t : {1, 2, 5, 20}) {
    const auto tr = ppr_truncated(g, nu, alpha, t);
    CHECK(tr.kind == ScoreKind::Truncated);
    CHECK(tr.steps == t);
    CHECK(tr.sum() == doctest::Approx(1.0 - std::pow(alpha, t)).epsilon(1e-13));
  }
  const auto one = ppr_truncated(g, nu, alpha, 1);
  for (NodeId v = 0; v < 200; ++v) CHECK(one[v] == doctest::Approx((1 - alpha) * nu.dense(200)[v]));
  // Monotone in t and converging to the full solution.
  const auto exact = ppr_iterate(g, nu, alpha);
  const auto t10 = ppr_truncated(g, nu, alpha, 10);
  const auto t80 = ppr_truncated(g, nu, alpha, 80);
  for (NodeId v = 0; v < 200; ++v) CHECK(t10[v] <= t80[v] + 1e-15);
  CHECK(linf(t80.values, exact.values) < 1e-12);
  CHECK(code_of([&] { ppr_truncated(g, nu, alpha, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("iteration limits and argument checks") {
  const auto c = PlantedGraphConfig::log_squared(100, 20, 2, 1);
  const Graph g = sample_planted_er(c);
  const auto nu = restart_vector(c);
  PprOptions tight;
  tight.max_iter = 1;
  CHECK(code_of([&] { ppr_iterate(g, nu, 0.9, tight); }) == ErrorCode::NotConverged);
  CHECK(code_of([&] { ppr_iterate(g, nu, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { ppr_iterate(g, RestartVector{}, 0.5); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { ppr_iterate(g, RestartVector{NodeSet::from_ids({100})}, 0.5); }) ==
        ErrorCode::InvalidArgument);
  CHECK(default_max_iterations(0.5, 1e-12) == static_cast<int>(std::ceil(std::log(5e-13) / std::log(0.5))) + 10);

  const Graph big = Graph::from_edges(kDenseOracleMaxNodes + 1, std::vector<Edge>{{0, 1}});
  CHECK(code_of([&] { ppr_dense_oracle(big, RestartVector{NodeSet::from_ids({0})}, 0.5); }) ==
        ErrorCode::SizeGuard);
}

TEST_CASE("rank_top orders by score then id") {
  ScoreVector s{{0.1, 0.5, 0.5, 0.0, 0.3}, 0.5, ScoreKind::Exact, 0};
  CHECK(rank_top(s, 1) == NodeSet::from_ids({1}));
  CHECK(rank_top(s, 2) == NodeSet::from_ids({1, 2}));
  CHECK(rank_top(s, 3) == NodeSet::from_ids({1, 2, 4}));
  CHECK(rank_top(s, 5).size() == 5);
  CHECK(code_of([&] { rank_top(s, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { rank_top(s, 6); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("classification error counts predicted nodes outside C over m") {
  PlantedGraphConfig c{10, 4, 1, 0.1, 0.2, 0};
  CHECK(classification_error(NodeSet::range(0, 4), c) == 0.0);
  CHECK(classification_error(NodeSet::range(6, 10), c) == 1.0);
  CHECK(classification_error(NodeSet::from_ids({0, 1, 8}), c) == 0.25);
}

TEST_CASE("scores csv is round-trip exact") {
  ScoreVector s{{0.1, 1.0 / 3.0}, 0.5, ScoreKind::Exact, 0};
  std::ostringstream out;
  write_scores_csv(out, s);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "node,score");
  std::getline(in, line);
  std::getline(in, line);
  CHECK(std::stod(line.substr(line.find(',') + 1)) == 1.0 / 3.0);
}
