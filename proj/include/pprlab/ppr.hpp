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

#ifndef PPRLAB_PPR_HPP_
#define PPRLAB_PPR_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pprlab/graph.hpp"

namespace pprlab {

enum class ScoreKind { Exact, Truncated, MeanFieldExpanded, ApprDense };

/// Dense nonnegative score per node.
struct ScoreVector {
  std::vector<double> values;
  double alpha = 0.0;
  ScoreKind kind = ScoreKind::Exact;
  /// Number of path lengths summed; only meaningful for Truncated.
  int steps = 0;

  std::size_t size() const { return values.size(); }
  double operator[](NodeId v) const { return values[v]; }
  double sum() const;
};

/// Uniform restart distribution over a seed set: mass 1/|seeds| on each.
struct RestartVector {
  NodeSet seeds;

  double weight() const { return 1.0 / static_cast<double>(seeds.size()); }
  /// Dense form of length n.
  std::vector<double> dense(std::size_t n) const;
};

/// Restart mass 1/k on the nodes {0..k-1}.
RestartVector restart_vector(const PlantedGraphConfig& config);

struct PprOptions {
  double tol = 1e-12;
  /// Defaults to ceil(ln(tol/2) / ln(alpha)) + 10.
  std::optional<int> max_iter;
};

int default_max_iterations(double alpha, double tol);

/// Personalized PageRank pi = (1 - alpha) nu (I - alpha P)^{-1} as a row
/// vector, by the fixed-point iteration pi <- (1 - alpha) nu + alpha pi P
/// started at nu. Iteration stops once the L1 change of one step is at
/// most tol. A degree-0 node restarts: its row of P is nu.
///
/// Throws NotConverged when max_iter steps do not reach tol.
ScoreVector ppr_iterate(const Graph& graph, const RestartVector& nu, double alpha,
                        const PprOptions& options = {});

/// Paths shorter than t: (1 - alpha) nu sum_{l<t} alpha^l P^l. Sums to
/// 1 - alpha^t.
ScoreVector ppr_truncated(const Graph& graph, const RestartVector& nu, double alpha, int t);

/// Direct dense LU solve of pi (I - alpha P) = (1 - alpha) nu, same
/// dangling rule as ppr_iterate. Throws SizeGuard above kDenseOracleMaxNodes.
inline constexpr std::size_t kDenseOracleMaxNodes = 4000;
ScoreVector ppr_dense_oracle(const Graph& graph, const RestartVector& nu, double alpha);

/// The `count` highest-scoring nodes; ties go to the smaller id.
NodeSet rank_top(const ScoreVector& scores, std::size_t count);

/// Fraction |predicted \ C| / m of the true community size.
double classification_error(const NodeSet& predicted, const PlantedGraphConfig& config);

/// CSV "node,score" with 17 significant digits.
void write_scores_csv(std::ostream& out, const ScoreVector& scores);

}  // namespace pprlab

#endif  // PPRLAB_PPR_HPP_
