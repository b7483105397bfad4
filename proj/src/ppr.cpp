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

#include "pprlab/ppr.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "pprlab/error.hpp"

namespace pprlab {

double ScoreVector::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

std::vector<double> RestartVector::dense(std::size_t n) const {
  std::vector<double> out(n, 0.0);
  const double w = weight();
  for (NodeId s : seeds.ids()) out[s] = w;
  return out;
}

RestartVector restart_vector(const PlantedGraphConfig& config) {
  require(config.k >= 1, ErrorCode::InvalidArgument, "restart vector needs k >= 1");
  return RestartVector{config.seeds()};
}

namespace {

void check_restart(const Graph& graph, const RestartVector& nu) {
  require(!nu.seeds.empty(), ErrorCode::InvalidArgument, "restart vector has no seeds");
  nu.seeds.validate(graph.num_nodes());
}

// One application of x -> alpha x P + c nu where the mass of x sitting on
// degree-0 nodes is routed back through nu. `scaled` is scratch space.
void propagate(const Graph& graph, const RestartVector& nu, double alpha, double restart_mass,
               const std::vector<double>& x, std::vector<double>& scaled,
               std::vector<double>& out) {
  const std::size_t n = graph.num_nodes();
  const auto degrees = graph.degrees();
  double dangling = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    if (degrees[u] == 0) {
      dangling += x[u];
      scaled[u] = 0.0;
    } else {
      scaled[u] = x[u] / degrees[u];
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    double acc = 0.0;
    for (NodeId u : graph.neighbors(v)) acc += scaled[u];
    out[v] = alpha * acc;
  }
  const double seed_mass = (restart_mass + alpha * dangling) * nu.weight();
  for (NodeId s : nu.seeds.ids()) out[s] += seed_mass;
}

}  // namespace

int default_max_iterations(double alpha, double tol) {
  if (alpha <= 0.0) return 10;
  // The first step changes pi by at most 2 alpha in L1 and the change
  // contracts by alpha per step.
  const double steps = std::log(tol / 2.0) / std::log(alpha);
  return static_cast<int>(std::ceil(std::max(steps, 0.0))) + 10;
}

ScoreVector ppr_iterate(const Graph& graph, const RestartVector& nu, double alpha,
                        const PprOptions& options) {
  require(alpha >= 0.0 && alpha < 1.0, ErrorCode::InvalidArgument, "alpha must be in [0, 1)");
  require(options.tol > 0.0, ErrorCode::InvalidArgument, "tol must be positive");
  check_restart(graph, nu);
  const int max_iter = options.max_iter.value_or(default_max_iterations(alpha, options.tol));

  const std::size_t n = graph.num_nodes();
  std::vector<double> current = nu.dense(n);
  std::vector<double> next(n);
  std::vector<double> scratch(n);
  double residual = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    propagate(graph, nu, alpha, 1.0 - alpha, current, scratch, next);
    residual = 0.0;
    for (std::size_t v = 0; v < n; ++v) residual += std::abs(next[v] - current[v]);
    current.swap(next);
    if (residual <= options.tol) {
      return ScoreVector{std::move(current), alpha, ScoreKind::Exact, 0};
    }
  }
  throw Error(ErrorCode::NotConverged, "PPR iteration stopped at L1 residual " +
                                           std::to_string(residual) + " after " +
                                           std::to_string(max_iter) + " steps");
}

ScoreVector ppr_truncated(const Graph& graph, const RestartVector& nu, double alpha, int t) {
  require(t >= 1, ErrorCode::InvalidArgument, "truncation length must be >= 1");
  require(alpha >= 0.0 && alpha < 1.0, ErrorCode::InvalidArgument, "alpha must be in [0, 1)");
  check_restart(graph, nu);

  const std::size_t n = graph.num_nodes();
  // walk holds alpha^l nu P^l.
  std::vector<double> walk = nu.dense(n);
  std::vector<double> next(n);
  std::vector<double> scratch(n);
  std::vector<double> total(n, 0.0);
  for (int l = 0; l < t; ++l) {
    for (std::size_t v = 0; v < n; ++v) total[v] += (1.0 - alpha) * walk[v];
    if (l + 1 < t) {
      propagate(graph, nu, alpha, 0.0, walk, scratch, next);
      walk.swap(next);
    }
  }
  return ScoreVector{std::move(total), alpha, ScoreKind::Truncated, t};
}

ScoreVector ppr_dense_oracle(const Graph& graph, const RestartVector& nu, double alpha) {
  const std::size_t n = graph.num_nodes();
  require(n <= kDenseOracleMaxNodes, ErrorCode::SizeGuard,
          "dense oracle limited to " + std::to_string(kDenseOracleMaxNodes) + " nodes");
  require(alpha >= 0.0 && alpha < 1.0, ErrorCode::InvalidArgument, "alpha must be in [0, 1)");
  check_restart(graph, nu);

  const auto size = static_cast<Eigen::Index>(n);
  const std::vector<double> restart = nu.dense(n);
  // M = I - alpha P; solve M^T pi^T = (1 - alpha) nu^T.
  Eigen::MatrixXd transposed = Eigen::MatrixXd::Identity(size, size);
  for (NodeId u = 0; u < n; ++u) {
    const auto d = graph.degree(u);
    if (d == 0) {
      for (std::size_t v = 0; v < n; ++v) {
        transposed(static_cast<Eigen::Index>(v), u) -= alpha * restart[v];
      }
    } else {
      for (NodeId v : graph.neighbors(u)) transposed(v, u) -= alpha / d;
    }
  }
  Eigen::VectorXd rhs(size);
  for (std::size_t v = 0; v < n; ++v) rhs(static_cast<Eigen::Index>(v)) = (1.0 - alpha) * restart[v];
  const Eigen::VectorXd solution = transposed.partialPivLu().solve(rhs);

  ScoreVector out{std::vector<double>(n), alpha, ScoreKind::Exact, 0};
  for (std::size_t v = 0; v < n; ++v) out.values[v] = solution(static_cast<Eigen::Index>(v));
  return out;
}

NodeSet rank_top(const ScoreVector& scores, std::size_t count) {
  const std::size_t n = scores.size();
  require(count >= 1 && count <= n, ErrorCode::InvalidArgument, "rank_top count out of range");
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  auto better = [&](NodeId a, NodeId b) {
    if (scores.values[a] != scores.values[b]) return scores.values[a] > scores.values[b];
    return a < b;
  };
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count - 1),
                   order.end(), better);
  order.resize(count);
  return NodeSet::from_ids(std::move(order));
}

double classification_error(const NodeSet& predicted, const PlantedGraphConfig& config) {
  require(config.m >= 1, ErrorCode::InvalidArgument, "community must be nonempty");
  std::size_t outside = 0;
  for (NodeId v : predicted.ids()) outside += config.in_community(v) ? 0 : 1;
  return static_cast<double>(outside) / static_cast<double>(config.m);
}

void write_scores_csv(std::ostream& out, const ScoreVector& scores) {
  out << "node,score\n";
  char buf[64];
  for (std::size_t v = 0; v < scores.size(); ++v) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", v, scores.values[v]);
    out << buf;
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing score CSV");
}

}  // namespace pprlab
