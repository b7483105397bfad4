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

#ifndef PPRLAB_MEAN_FIELD_HPP_
#define PPRLAB_MEAN_FIELD_HPP_

#include "pprlab/graph.hpp"
#include "pprlab/ppr.hpp"

namespace pprlab {

/// PPR on the expected graph. By symmetry it takes three values: pi0 on
/// each seed, pi1 on each non-seed community node, pi2 outside.
struct MeanFieldPpr {
  double pi0 = 0.0;
  double pi1 = 0.0;
  double pi2 = 0.0;
  double alpha = 0.0;
  PlantedGraphConfig config;

  /// k pi0 + (m - k) pi1 + (n - m) pi2.
  double total_mass() const;
  /// Value on node v according to its block.
  double at(NodeId v) const;
};

/// rho = q/p and beta = (n - m)/n.
struct ModelShape {
  double rho = 1.0;
  double beta = 0.5;

  /// Throws InvalidShape unless rho > 0 and 0 < beta < 1.
  void validate() const;
  /// (1 - beta) rho + beta.
  double x() const { return (1.0 - beta) * rho + beta; }

  static ModelShape from_config(const PlantedGraphConfig& config);
};

/// Closed-form solution of the three-block mean-field system.
/// Throws DegenerateModel when m q + (n - m) p = 0.
MeanFieldPpr mean_field_ppr(const PlantedGraphConfig& config, double alpha);

/// The same system solved numerically as a 3x3 linear system. Independent
/// of mean_field_ppr; throws SingularSystem when the matrix is singular.
MeanFieldPpr mean_field_solve_3x3(const PlantedGraphConfig& config, double alpha);

/// Residuals of the three block equations at `mf`, max-abs.
double mean_field_residual(const MeanFieldPpr& mf);

/// Dense block vector [pi0 x k, pi1 x (m-k), pi2 x (n-m)].
ScoreVector expand(const MeanFieldPpr& mf);

/// pi1 - pi2 as a function of alpha, written through rho and beta:
///   alpha (1-alpha) (rho-1) (1-alpha beta)
///   / (m (alpha^2 beta (rho-1) - alpha (rho beta + rho + beta^2/(1-beta))
///         + rho + beta/(1-beta)))
/// The denominator vanishes at alpha = 1 together with the numerator; the
/// removable singularity is evaluated through the factored form.
double mf_gap(const ModelShape& shape, double m, double alpha);

struct OptimalAlpha {
  /// min(1, (x - sqrt(x)) / (beta (1-beta) (rho-1))).
  double alpha = 1.0;
  /// Unclamped sqrt(x) / (beta (1 + sqrt(x))); equals the above when the
  /// clamp does not bind.
  double alternate_form = 1.0;
  /// True when the stationary point lies at or beyond alpha = 1.
  bool clamped = false;
};

/// Damping factor maximizing pi1 - pi2. Throws InvalidShape unless rho > 1.
OptimalAlpha optimal_alpha(const ModelShape& shape);

/// Mean conductance of the community, p factored out, kappa = m/n:
///   kappa (1-kappa) / (min(kappa^2 rho, (1-kappa)^2) + kappa (1-kappa)).
double mean_conductance_community(double kappa, double rho);

struct GammaScan {
  double gamma = 0.0;
  double value = 0.0;
};

/// Mean conductance of a set holding a fraction gamma of the nodes and
/// containing the community (fraction kappa, q = (1+c) p):
///   gamma (1-gamma) / (min(gamma^2 + kappa^2 c, (1-gamma)^2) + gamma (1-gamma)).
double mean_conductance_superset(double gamma, double kappa, double c);

/// Grid scan of mean_conductance_superset over gamma in (kappa, 1) at
/// spacing 1e-4. Returns the smallest minimizing grid point.
GammaScan min_conductance_gamma(double kappa, double c);

}  // namespace pprlab

#endif  // PPRLAB_MEAN_FIELD_HPP_
