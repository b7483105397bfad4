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

#ifndef PPRLAB_APPR_HPP_
#define PPRLAB_APPR_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pprlab/graph.hpp"
#include "pprlab/ppr.hpp"
#include "pprlab/sparse_map.hpp"

namespace pprlab {

struct ApprParameters {
  double alpha = 0.0;
  double eps = 0.0;
  int b = 0;
  int B = 0;
};

/// Parameters targeting a cut of conductance `target_phi`:
///   alpha = 1 - phi^2 / (225 ln(100 sqrt(|E|))),
///   eps   = 2^-b / (48 B),  B = ceil(log2 |E|).
/// Throws OutOfRange unless 1 <= b <= B.
ApprParameters acl_parameters(double target_phi, std::uint64_t edge_count, int b);

struct ApprResult {
  SparseNodeMap<double> p;
  SparseNodeMap<double> r;
  double alpha = 0.0;
  double eps = 0.0;
  std::uint64_t pushes = 0;

  /// Dense copy of p, tagged ApprDense.
  ScoreVector dense_scores() const;
  double score_mass() const;
  double residual_mass() const;
};

struct ApprOptions {
  /// Keep half of the pushed residual at the node (ACL's lazy walk).
  bool lazy = false;
  /// Throws BudgetExceeded after this many pushes.
  std::uint64_t push_budget = 1'000'000'000;
  /// Called after every push; for invariant checks in tests.
  std::function<void(const ApprResult&)> on_push;
};

/// Push-based approximate PPR. Starts from p = 0, r = nu and, while some
/// node has r(u) >= eps d(u), pushes u:
///   p(u) += (1-alpha) r(u); r(v) += alpha r(u) / d(u) for v ~ u; r(u) = 0.
/// Lazy push spreads alpha r(u) / (2 d(u)) and keeps alpha r(u) / 2 at u.
/// Nodes are served first-in first-out in the order they cross the
/// threshold, so the output is a function of the graph alone.
///
/// Throws DanglingSeed if a seed has degree 0.
ApprResult appr_push(const Graph& graph, const RestartVector& seeds, double alpha, double eps,
                     const ApprOptions& options = {});

struct SweepResult {
  std::vector<NodeId> order;
  /// Ranking function value of order[i]: score / d or score.
  std::vector<double> ranking;
  /// prefix_conductance[i] is the conductance of {order[0..i]}.
  std::vector<double> prefix_conductance;
  std::size_t best_prefix = 0;
  double best_conductance = 1.0;

  NodeSet best_set() const;
  NodeSet prefix(std::size_t size) const;
};

struct SweepOptions {
  bool degree_scaling = true;
  /// Largest prefix examined; defaults to the support size.
  std::optional<std::size_t> cap;
};

/// Orders the support (positive entries) by descending ranking value with
/// ties to the smaller id, then scans prefixes with incremental cut and
/// volume updates. A prefix whose complement has zero volume is assigned
/// conductance 1. Throws EmptySupport if no score is positive.
SweepResult sweep(const Graph& graph, const ScoreVector& scores, const SweepOptions& options = {});
SweepResult sweep(const Graph& graph, const SparseNodeMap<double>& scores,
                  const SweepOptions& options = {});

struct ClusterOptions {
  bool degree_scaling = true;
  bool lazy = false;
  std::optional<double> target_phi;
  std::optional<std::size_t> cap;
  std::uint64_t push_budget = 1'000'000'000;
};

struct ClusterResult {
  NodeSet cluster;
  ApprResult appr;
  SweepResult sweep;
  /// Sweep set before truncation to m.
  std::size_t sweep_size = 0;
  bool truncated = false;
  /// best_conductance < target_phi, when a target was given.
  std::optional<bool> meets_target;
};

/// APPR from the config's seeds, sweep, and truncation of the sweep set to
/// its m highest-ranked nodes when it is larger than m.
ClusterResult appr_cluster(const Graph& graph, const PlantedGraphConfig& config, double alpha,
                           double eps, const ClusterOptions& options = {});

}  // namespace pprlab

#endif  // PPRLAB_APPR_HPP_
