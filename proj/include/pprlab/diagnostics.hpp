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

#ifndef PPRLAB_DIAGNOSTICS_HPP_
#define PPRLAB_DIAGNOSTICS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "pprlab/graph.hpp"
#include "pprlab/mean_field.hpp"
#include "pprlab/ppr.hpp"
#include "pprlab/stats.hpp"

namespace pprlab {

/// ||pi - pibar||_2 / ||pibar||_2. Throws ZeroNorm if pibar is zero.
double relative_l2(std::span<const double> pi, std::span<const double> pibar);

struct BoundValue {
  double value = 0.0;
  /// False when the denominator is not positive and the bound is vacuous.
  bool valid = false;
};

/// alpha C / ((1-alpha) sqrt(n p / ln n) - alpha C): the high-probability
/// bound on relative_l2(pi, mean field), up to the unknown constant C.
BoundValue l2_concentration_bound(const PlantedGraphConfig& config, double alpha, double C);

struct ConcentrationReport {
  PlantedGraphConfig config;
  double alpha = 0.0;
  double constant = 1.0;
  double rel_l2 = 0.0;
  BoundValue bound;
};

/// Samples the graph, solves PPR and reports its distance to the mean field
/// next to the bound.
ConcentrationReport concentration_report(const PlantedGraphConfig& config, double alpha,
                                         double C = 1.0);

struct SpectralOptions {
  double tol = 1e-6;
  int max_steps = 400;
  std::uint64_t start_seed = 0x5eed;
};

inline constexpr std::size_t kSpectralMaxNodes = 5000;

/// Largest singular value of P - Pbar, where Pbar = Dbar^{-1} Abar is the
/// transition matrix of the expected simple graph (zero diagonal, q inside
/// the community, p elsewhere). The top eigenvalue of the Gram operator
/// (P - Pbar)^T (P - Pbar) is found by Lanczos iteration with full
/// reorthogonalization; each operator application is O(|E| + n) since Pbar
/// is applied through its block structure.
///
/// Throws SizeGuard above kSpectralMaxNodes and DanglingNode if some node
/// has degree 0.
double spectral_deviation(const Graph& graph, const PlantedGraphConfig& config,
                          const SpectralOptions& options = {});

/// Fraction of nodes U with |pi_U - pibar_{block(U)}| >= eps_scale / n.
/// This is the probability over a uniform U for one graph.
double concentration_frequency(std::span<const double> pi, const MeanFieldPpr& mf,
                               double eps_scale);

/// Average of concentration_frequency over `replicates` independent graphs
/// (replica streams 0..replicates-1 of config.seed).
double concentration_probe(const PlantedGraphConfig& config, double alpha, double eps_scale,
                           std::size_t replicates);

enum class NodeClass { InCommunityNonSeed, OutsideCommunity };

std::string_view to_string(NodeClass node_class);

struct CovReport {
  NodeClass node_class = NodeClass::InCommunityNonSeed;
  NodeId node = 0;
  std::size_t replicates = 0;
  SampleSummary summary;
};

/// Node observed for a class: m-1 inside the community, n-1 outside.
NodeId representative_node(const PlantedGraphConfig& config, NodeClass node_class);

/// Coefficient-of-variation estimate of pi at a fixed node of the class
/// over `replicates` (>= 30) independent graphs.
CovReport cov_estimate(const PlantedGraphConfig& config, double alpha, NodeClass node_class,
                       std::size_t replicates);

/// The same report from already collected samples of pi at `node`.
CovReport cov_from_samples(NodeClass node_class, NodeId node, std::span<const double> samples);

struct ClassBoundCheck {
  bool checked = false;
  NodeId node = 0;
  double mean = 0.0;
  double mean_se = 0.0;
  double bound = 0.0;
  bool pass = true;
};

struct ExpectationBoundReport {
  std::size_t replicates = 0;
  ClassBoundCheck in_community;
  ClassBoundCheck outside;

  bool pass() const { return in_community.pass && outside.pass; }
};

/// Sample mean of pi at a fixed node against 1/(m-k) inside the community
/// and 1/(n-m) outside, each with a 4-standard-error allowance. A class
/// with no nodes is skipped.
ExpectationBoundReport expectation_bound_check(const PlantedGraphConfig& config, double alpha,
                                               std::size_t replicates);

}  // namespace pprlab

#endif  // PPRLAB_DIAGNOSTICS_HPP_
