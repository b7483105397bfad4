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

#include "pprlab/appr.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "pprlab/error.hpp"

namespace pprlab {

ApprParameters acl_parameters(double target_phi, std::uint64_t edge_count, int b) {
  require(target_phi > 0.0 && target_phi <= 1.0, ErrorCode::InvalidArgument,
          "target conductance must lie in (0, 1]");
  require(edge_count >= 2, ErrorCode::InvalidArgument, "need at least two edges");
  const int B = static_cast<int>(std::ceil(std::log2(static_cast<double>(edge_count))));
  require(b >= 1 && b <= B, ErrorCode::OutOfRange,
          "b must lie in [1, " + std::to_string(B) + "]");

  ApprParameters out;
  out.b = b;
  out.B = B;
  out.alpha = 1.0 - target_phi * target_phi /
                        (225.0 * std::log(100.0 * std::sqrt(static_cast<double>(edge_count))));
  out.eps = std::ldexp(1.0, -b) / (48.0 * B);
  return out;
}

ScoreVector ApprResult::dense_scores() const {
  ScoreVector out{std::vector<double>(p.universe(), 0.0), alpha, ScoreKind::ApprDense, 0};
  p.for_each([&](NodeId v, double x) { out.values[v] = x; });
  return out;
}

double ApprResult::score_mass() const {
  double total = 0.0;
  p.for_each([&](NodeId, double x) { total += x; });
  return total;
}

double ApprResult::residual_mass() const {
  double total = 0.0;
  r.for_each([&](NodeId, double x) { total += x; });
  return total;
}

ApprResult appr_push(const Graph& graph, const RestartVector& seeds, double alpha, double eps,
                     const ApprOptions& options) {
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::InvalidArgument, "alpha must be in (0, 1)");
  require(eps > 0.0, ErrorCode::InvalidArgument, "eps must be positive");
  require(!seeds.seeds.empty(), ErrorCode::InvalidArgument, "no seeds");
  seeds.seeds.validate(graph.num_nodes());
  for (NodeId s : seeds.seeds.ids()) {
    require(graph.degree(s) > 0, ErrorCode::DanglingSeed,
            "seed " + std::to_string(s) + " has degree 0");
  }

  const std::size_t n = graph.num_nodes();
  ApprResult result{SparseNodeMap<double>(n), SparseNodeMap<double>(n), alpha, eps, 0};
  SparseNodeMap<char> queued(n);
  std::deque<NodeId> queue;

  auto above = [&](NodeId v, double residual) {
    return residual >= eps * static_cast<double>(graph.degree(v));
  };
  auto enqueue = [&](NodeId v) {
    if (!queued.get(v)) {
      queued.at(v) = 1;
      queue.push_back(v);
    }
  };

  const double w = seeds.weight();
  for (NodeId s : seeds.seeds.ids()) {
    result.r.at(s) = w;
    if (above(s, w)) enqueue(s);
  }

  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    queued.at(u) = 0;
    const double ru = result.r.get(u);
    if (!above(u, ru)) continue;
    if (result.pushes >= options.push_budget) {
      throw Error(ErrorCode::BudgetExceeded,
                  "push budget of " + std::to_string(options.push_budget) + " exhausted");
    }
    ++result.pushes;

    const auto d = static_cast<double>(graph.degree(u));
    result.p.at(u) += (1.0 - alpha) * ru;
    double share;
    if (options.lazy) {
      share = alpha * ru / (2.0 * d);
      result.r.at(u) = alpha * ru / 2.0;
    } else {
      share = alpha * ru / d;
      result.r.at(u) = 0.0;
    }
    for (NodeId v : graph.neighbors(u)) {
      double& rv = result.r.at(v);
      rv += share;
      if (above(v, rv)) enqueue(v);
    }
    if (options.lazy && above(u, result.r.get(u))) enqueue(u);
    if (options.on_push) options.on_push(result);
  }
  return result;
}

// ------------------------------------------------------------------ sweep

NodeSet SweepResult::prefix(std::size_t size) const {
  size = std::min(size, order.size());
  return NodeSet::from_ids(std::vector<NodeId>(order.begin(),
                                               order.begin() + static_cast<std::ptrdiff_t>(size)));
}

NodeSet SweepResult::best_set() const { return prefix(best_prefix); }

namespace {

SweepResult sweep_support(const Graph& graph, std::vector<std::pair<NodeId, double>> support,
                          const SweepOptions& options) {
  require(!support.empty(), ErrorCode::EmptySupport, "sweep over an all-zero score vector");
  for (auto& [v, value] : support) {
    if (options.degree_scaling) {
      const auto d = graph.degree(v);
      value = d > 0 ? value / d : std::numeric_limits<double>::infinity();
    }
  }
  std::sort(support.begin(), support.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  const std::size_t limit = std::min(options.cap.value_or(support.size()), support.size());
  require(limit >= 1, ErrorCode::InvalidArgument, "sweep cap must be >= 1");

  SweepResult out;
  out.order.reserve(support.size());
  out.ranking.reserve(support.size());
  for (const auto& [v, value] : support) {
    out.order.push_back(v);
    out.ranking.push_back(value);
  }
  out.prefix_conductance.reserve(limit);

  const std::uint64_t total = graph.total_volume();
  SparseNodeMap<char> member(graph.num_nodes());
  std::int64_t cut = 0;
  std::uint64_t vol = 0;
  for (std::size_t i = 0; i < limit; ++i) {
    const NodeId v = out.order[i];
    std::int64_t internal = 0;
    for (NodeId u : graph.neighbors(v)) internal += member.get(u);
    member.at(v) = 1;
    cut += static_cast<std::int64_t>(graph.degree(v)) - 2 * internal;
    vol += graph.degree(v);
    const std::uint64_t smaller = std::min(vol, total - vol);
    const double phi =
        smaller == 0 ? 1.0 : static_cast<double>(cut) / static_cast<double>(smaller);
    out.prefix_conductance.push_back(phi);
    if (i == 0 || phi < out.best_conductance) {
      out.best_conductance = phi;
      out.best_prefix = i + 1;
    }
  }
  return out;
}

}  // namespace

SweepResult sweep(const Graph& graph, const ScoreVector& scores, const SweepOptions& options) {
  require(scores.size() == graph.num_nodes(), ErrorCode::InvalidArgument,
          "score vector length differs from node count");
  std::vector<std::pair<NodeId, double>> support;
  for (NodeId v = 0; v < scores.size(); ++v) {
    require(scores.values[v] >= 0.0, ErrorCode::InvalidArgument, "negative score");
    if (scores.values[v] > 0.0) support.emplace_back(v, scores.values[v]);
  }
  return sweep_support(graph, std::move(support), options);
}

SweepResult sweep(const Graph& graph, const SparseNodeMap<double>& scores,
                  const SweepOptions& options) {
  std::vector<std::pair<NodeId, double>> support;
  support.reserve(scores.size());
  scores.for_each([&](NodeId v, double x) {
    require(x >= 0.0, ErrorCode::InvalidArgument, "negative score");
    if (x > 0.0) support.emplace_back(v, x);
  });
  return sweep_support(graph, std::move(support), options);
}

ClusterResult appr_cluster(const Graph& graph, const PlantedGraphConfig& config, double alpha,
                           double eps, const ClusterOptions& options) {
  config.validate();
  require(graph.num_nodes() == config.n, ErrorCode::InvalidArgument,
          "graph size differs from config");

  ClusterResult out;
  ApprOptions push_options;
  push_options.lazy = options.lazy;
  push_options.push_budget = options.push_budget;
  out.appr = appr_push(graph, restart_vector(config), alpha, eps, push_options);

  SweepOptions sweep_options;
  sweep_options.degree_scaling = options.degree_scaling;
  sweep_options.cap = options.cap;
  out.sweep = sweep(graph, out.appr.p, sweep_options);

  out.sweep_size = out.sweep.best_prefix;
  out.truncated = out.sweep_size > config.m;
  out.cluster = out.sweep.prefix(out.truncated ? config.m : out.sweep_size);
  if (options.target_phi) out.meets_target = out.sweep.best_conductance < *options.target_phi;
  return out;
}

}  // namespace pprlab
