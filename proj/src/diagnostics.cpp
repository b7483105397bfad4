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

#include "pprlab/diagnostics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "pprlab/error.hpp"
#include "pprlab/rng.hpp"

namespace pprlab {

double relative_l2(std::span<const double> pi, std::span<const double> pibar) {
  require(pi.size() == pibar.size(), ErrorCode::InvalidArgument, "length mismatch");
  double diff = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    diff += (pi[i] - pibar[i]) * (pi[i] - pibar[i]);
    norm += pibar[i] * pibar[i];
  }
  require(norm > 0.0, ErrorCode::ZeroNorm, "reference vector has zero norm");
  return std::sqrt(diff / norm);
}

BoundValue l2_concentration_bound(const PlantedGraphConfig& config, double alpha, double C) {
  require(C > 0.0, ErrorCode::InvalidArgument, "constant must be positive");
  require(config.n >= 2, ErrorCode::InvalidArgument, "need n >= 2");
  const auto n = static_cast<double>(config.n);
  const double denominator = (1.0 - alpha) * std::sqrt(n * config.p / std::log(n)) - alpha * C;
  BoundValue out;
  out.valid = denominator > 0.0;
  out.value = out.valid ? alpha * C / denominator : 0.0;
  return out;
}

ConcentrationReport concentration_report(const PlantedGraphConfig& config, double alpha,
                                         double C) {
  const Graph graph = sample_planted_er(config);
  const ScoreVector pi = ppr_iterate(graph, restart_vector(config), alpha);
  const ScoreVector pibar = expand(mean_field_ppr(config, alpha));
  ConcentrationReport out;
  out.config = config;
  out.alpha = alpha;
  out.constant = C;
  out.rel_l2 = relative_l2(pi.values, pibar.values);
  out.bound = l2_concentration_bound(config, alpha, C);
  return out;
}

// ------------------------------------------------------ spectral deviation

namespace {

class DeviationOperator {
 public:
  DeviationOperator(const Graph& graph, const PlantedGraphConfig& config)
      : graph_(graph), n_(config.n), m_(config.m), p_(config.p), q_(config.q) {
    const auto n = static_cast<double>(config.n);
    const auto m = static_cast<double>(config.m);
    community_degree_ = (m - 1.0) * q_ + (n - m) * p_;
    outside_degree_ = (n - 1.0) * p_;
    require(community_degree_ > 0.0 && (m_ == n_ || outside_degree_ > 0.0),
            ErrorCode::DegenerateModel, "expected degree is zero");
    scratch_.resize(n_);
  }

  // out = (P - Pbar)^T (P - Pbar) x
  void gram(const std::vector<double>& x, std::vector<double>& out) {
    forward(x, scratch_);
    backward(scratch_, out);
  }

 private:
  double expected_degree(std::size_t i) const {
    return i < m_ ? community_degree_ : outside_degree_;
  }

  // y = (P - Pbar) x
  void forward(const std::vector<double>& x, std::vector<double>& y) const {
    double community_sum = 0.0;
    double outside_sum = 0.0;
    for (std::size_t i = 0; i < n_; ++i) (i < m_ ? community_sum : outside_sum) += x[i];
    const double total = community_sum + outside_sum;
    for (NodeId i = 0; i < n_; ++i) {
      double acc = 0.0;
      for (NodeId j : graph_.neighbors(i)) acc += x[j];
      const double walk = acc / graph_.degree(i);
      const double expected = i < m_ ? (q_ * (community_sum - x[i]) + p_ * outside_sum)
                                     : p_ * (total - x[i]);
      y[i] = walk - expected / expected_degree(i);
    }
  }

  // z = (P - Pbar)^T y
  void backward(const std::vector<double>& y, std::vector<double>& z) const {
    double community_sum = 0.0;
    double outside_sum = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      (i < m_ ? community_sum : outside_sum) += y[i] / expected_degree(i);
    }
    const double total = community_sum + outside_sum;
    for (NodeId j = 0; j < n_; ++j) {
      double acc = 0.0;
      for (NodeId i : graph_.neighbors(j)) acc += y[i] / graph_.degree(i);
      const double w = y[j] / expected_degree(j);
      const double expected =
          j < m_ ? q_ * (community_sum - w) + p_ * outside_sum : p_ * (total - w);
      z[j] = acc - expected;
    }
  }

  const Graph& graph_;
  std::size_t n_;
  std::size_t m_;
  double p_;
  double q_;
  double community_degree_ = 0.0;
  double outside_degree_ = 0.0;
  std::vector<double> scratch_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * b[i];
  return total;
}

}  // namespace

double spectral_deviation(const Graph& graph, const PlantedGraphConfig& config,
                          const SpectralOptions& options) {
  config.validate();
  const std::size_t n = graph.num_nodes();
  require(n == config.n, ErrorCode::InvalidArgument, "graph size differs from config");
  require(n <= kSpectralMaxNodes, ErrorCode::SizeGuard,
          "spectral deviation limited to " + std::to_string(kSpectralMaxNodes) + " nodes");
  for (NodeId v = 0; v < n; ++v) {
    require(graph.degree(v) > 0, ErrorCode::DanglingNode,
            "node " + std::to_string(v) + " has degree 0");
  }

  DeviationOperator op(graph, config);
  Rng rng(options.start_seed);
  std::vector<std::vector<double>> basis;
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform01() - 0.5;
  const double start_norm = std::sqrt(dot(v, v));
  for (double& x : v) x /= start_norm;

  std::vector<double> diagonal;
  std::vector<double> off_diagonal;
  std::vector<double> w(n);
  const int max_steps = std::min<int>(options.max_steps, static_cast<int>(n));
  double theta = 0.0;
  for (int step = 0; step < max_steps; ++step) {
    basis.push_back(v);
    op.gram(v, w);
    diagonal.push_back(dot(v, w));
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double c = dot(b, w);
        for (std::size_t i = 0; i < n; ++i) w[i] -= c * b[i];
      }
    }
    const double beta = std::sqrt(dot(w, w));

    const auto size = static_cast<Eigen::Index>(diagonal.size());
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(diagonal.data(), size);
    Eigen::VectorXd sub(std::max<Eigen::Index>(size - 1, 0));
    for (Eigen::Index i = 0; i + 1 < size; ++i) sub(i) = off_diagonal[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    theta = eig.eigenvalues()(size - 1);
    const double ritz_residual = beta * std::abs(eig.eigenvectors()(size - 1, size - 1));
    if (ritz_residual <= options.tol * std::abs(theta) || beta <= 1e-14 * (1.0 + std::abs(theta))) {
      break;
    }
    off_diagonal.push_back(beta);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / beta;
  }
  return std::sqrt(std::max(theta, 0.0));
}

// ----------------------------------------------------------- Monte Carlo

double concentration_frequency(std::span<const double> pi, const MeanFieldPpr& mf,
                               double eps_scale) {
  require(pi.size() == mf.config.n, ErrorCode::InvalidArgument, "length mismatch");
  require(eps_scale > 0.0, ErrorCode::InvalidArgument, "eps_scale must be positive");
  const double threshold = eps_scale / static_cast<double>(mf.config.n);
  std::size_t hits = 0;
  for (NodeId v = 0; v < pi.size(); ++v) {
    if (std::abs(pi[v] - mf.at(v)) >= threshold) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(pi.size());
}

double concentration_probe(const PlantedGraphConfig& config, double alpha, double eps_scale,
                           std::size_t replicates) {
  require(replicates >= 1, ErrorCode::InvalidArgument, "need at least one replicate");
  const MeanFieldPpr mf = mean_field_ppr(config, alpha);
  const RestartVector nu = restart_vector(config);
  double total = 0.0;
  for (std::size_t r = 0; r < replicates; ++r) {
    const Graph graph = sample_planted_er(config.replica(r));
    const ScoreVector pi = ppr_iterate(graph, nu, alpha);
    total += concentration_frequency(pi.values, mf, eps_scale);
  }
  return total / static_cast<double>(replicates);
}

std::string_view to_string(NodeClass node_class) {
  return node_class == NodeClass::InCommunityNonSeed ? "in_C_not_S" : "outside_C";
}

NodeId representative_node(const PlantedGraphConfig& config, NodeClass node_class) {
  if (node_class == NodeClass::InCommunityNonSeed) {
    require(config.m > config.k, ErrorCode::InvalidArgument,
            "no non-seed community node when k = m");
    return static_cast<NodeId>(config.m - 1);
  }
  require(config.n > config.m, ErrorCode::InvalidArgument, "no node outside the community");
  return static_cast<NodeId>(config.n - 1);
}

namespace {

std::vector<double> sample_node_scores(const PlantedGraphConfig& config, double alpha,
                                       NodeId node, std::size_t replicates) {
  const RestartVector nu = restart_vector(config);
  std::vector<double> samples(replicates);
  for (std::size_t r = 0; r < replicates; ++r) {
    const Graph graph = sample_planted_er(config.replica(r));
    samples[r] = ppr_iterate(graph, nu, alpha).values[node];
  }
  return samples;
}

}  // namespace

CovReport cov_from_samples(NodeClass node_class, NodeId node, std::span<const double> samples) {
  require(samples.size() >= 3, ErrorCode::InvalidArgument, "need at least 3 samples");
  CovReport out;
  out.node_class = node_class;
  out.node = node;
  out.replicates = samples.size();
  out.summary = summarize(samples);
  return out;
}

CovReport cov_estimate(const PlantedGraphConfig& config, double alpha, NodeClass node_class,
                       std::size_t replicates) {
  require(replicates >= 30, ErrorCode::InvalidArgument, "cov_estimate needs >= 30 replicates");
  config.validate();
  const NodeId node = representative_node(config, node_class);
  const auto samples = sample_node_scores(config, alpha, node, replicates);
  return cov_from_samples(node_class, node, samples);
}

ExpectationBoundReport expectation_bound_check(const PlantedGraphConfig& config, double alpha,
                                               std::size_t replicates) {
  require(replicates >= 30, ErrorCode::InvalidArgument,
          "expectation_bound_check needs >= 30 replicates");
  config.validate();
  ExpectationBoundReport out;
  out.replicates = replicates;

  const bool has_community = config.m > config.k;
  const bool has_outside = config.n > config.m;
  const NodeId inner = has_community ? static_cast<NodeId>(config.m - 1) : 0;
  const NodeId outer = has_outside ? static_cast<NodeId>(config.n - 1) : 0;

  const RestartVector nu = restart_vector(config);
  std::vector<double> inner_samples;
  std::vector<double> outer_samples;
  for (std::size_t r = 0; r < replicates; ++r) {
    const Graph graph = sample_planted_er(config.replica(r));
    const ScoreVector pi = ppr_iterate(graph, nu, alpha);
    if (has_community) inner_samples.push_back(pi.values[inner]);
    if (has_outside) outer_samples.push_back(pi.values[outer]);
  }

  auto check = [](NodeId node, const std::vector<double>& samples, double bound) {
    ClassBoundCheck c;
    c.checked = true;
    c.node = node;
    c.mean = sample_mean(samples);
    c.mean_se = standard_error(samples);
    c.bound = bound;
    c.pass = c.mean <= bound + 4.0 * c.mean_se;
    return c;
  };
  if (has_community) {
    out.in_community =
        check(inner, inner_samples, 1.0 / static_cast<double>(config.m - config.k));
  }
  if (has_outside) {
    out.outside = check(outer, outer_samples, 1.0 / static_cast<double>(config.n - config.m));
  }
  return out;
}

}  // namespace pprlab
