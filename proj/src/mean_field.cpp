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

#include "pprlab/mean_field.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "pprlab/error.hpp"

namespace pprlab {

double MeanFieldPpr::total_mass() const {
  const auto n = static_cast<double>(config.n);
  const auto m = static_cast<double>(config.m);
  const auto k = static_cast<double>(config.k);
  return k * pi0 + (m - k) * pi1 + (n - m) * pi2;
}

double MeanFieldPpr::at(NodeId v) const {
  if (v < config.k) return pi0;
  if (v < config.m) return pi1;
  return pi2;
}

void ModelShape::validate() const {
  require(rho > 0.0, ErrorCode::InvalidShape, "rho must be positive");
  require(beta > 0.0 && beta < 1.0, ErrorCode::InvalidShape, "beta must lie in (0, 1)");
}

ModelShape ModelShape::from_config(const PlantedGraphConfig& config) {
  require(config.p > 0.0, ErrorCode::InvalidShape, "rho = q/p needs p > 0");
  ModelShape shape;
  shape.rho = config.q / config.p;
  shape.beta = static_cast<double>(config.n - config.m) / static_cast<double>(config.n);
  return shape;
}

namespace {

void check_inputs(const PlantedGraphConfig& config, double alpha) {
  config.validate();
  require(alpha >= 0.0 && alpha < 1.0, ErrorCode::InvalidArgument, "alpha must be in [0, 1)");
  const double community_degree = static_cast<double>(config.m) * config.q +
                                  static_cast<double>(config.n - config.m) * config.p;
  require(community_degree > 0.0, ErrorCode::DegenerateModel, "m q + (n - m) p is zero");
}

}  // namespace

MeanFieldPpr mean_field_ppr(const PlantedGraphConfig& config, double alpha) {
  check_inputs(config, alpha);
  const auto n = static_cast<double>(config.n);
  const auto m = static_cast<double>(config.m);
  const auto k = static_cast<double>(config.k);
  const double p = config.p;
  const double q = config.q;

  const double outside_share = alpha * (n - m) / n;
  const double community_degree = m * q + (n - m) * p;
  const double h = q - outside_share * (q - p);
  const double denominator = community_degree * (1.0 - outside_share) - alpha * m * h;
  require(denominator > 0.0, ErrorCode::DegenerateModel, "mean-field denominator vanished");

  MeanFieldPpr mf;
  mf.alpha = alpha;
  mf.config = config;
  mf.pi2 = (1.0 - alpha) * alpha * p / denominator;
  mf.pi1 = (1.0 - alpha) * alpha * h / denominator;
  mf.pi0 = (1.0 - alpha) / k + mf.pi1;
  return mf;
}

namespace {

struct BlockSystem {
  Eigen::Matrix3d matrix;
  Eigen::Vector3d rhs;
};

BlockSystem block_system(const PlantedGraphConfig& config, double alpha) {
  const auto n = static_cast<double>(config.n);
  const auto m = static_cast<double>(config.m);
  const auto k = static_cast<double>(config.k);
  const double community_degree = m * config.q + (n - m) * config.p;
  const double to_community = alpha * config.q / community_degree;
  const double to_outside = alpha * config.p / community_degree;
  const double from_outside = alpha * (n - m) / n;

  BlockSystem sys;
  sys.matrix << 1.0 - to_community * k, -to_community * (m - k), -from_outside,
      -to_community * k, 1.0 - to_community * (m - k), -from_outside,
      -to_outside * k, -to_outside * (m - k), 1.0 - from_outside;
  sys.rhs << (1.0 - alpha) / k, 0.0, 0.0;
  return sys;
}

}  // namespace

MeanFieldPpr mean_field_solve_3x3(const PlantedGraphConfig& config, double alpha) {
  check_inputs(config, alpha);
  const BlockSystem sys = block_system(config, alpha);
  Eigen::FullPivLU<Eigen::Matrix3d> lu(sys.matrix);
  require(lu.isInvertible(), ErrorCode::SingularSystem, "mean-field 3x3 system is singular");
  const Eigen::Vector3d x = lu.solve(sys.rhs);

  MeanFieldPpr mf;
  mf.alpha = alpha;
  mf.config = config;
  mf.pi0 = x(0);
  mf.pi1 = x(1);
  mf.pi2 = x(2);
  return mf;
}

double mean_field_residual(const MeanFieldPpr& mf) {
  const BlockSystem sys = block_system(mf.config, mf.alpha);
  const Eigen::Vector3d x(mf.pi0, mf.pi1, mf.pi2);
  return (sys.matrix * x - sys.rhs).cwiseAbs().maxCoeff();
}

ScoreVector expand(const MeanFieldPpr& mf) {
  ScoreVector out;
  out.alpha = mf.alpha;
  out.kind = ScoreKind::MeanFieldExpanded;
  out.values.assign(mf.config.n, mf.pi2);
  std::fill(out.values.begin(), out.values.begin() + static_cast<std::ptrdiff_t>(mf.config.m),
            mf.pi1);
  std::fill(out.values.begin(), out.values.begin() + static_cast<std::ptrdiff_t>(mf.config.k),
            mf.pi0);
  return out;
}

double mf_gap(const ModelShape& shape, double m, double alpha) {
  shape.validate();
  require(alpha >= 0.0 && alpha <= 1.0, ErrorCode::InvalidArgument, "alpha must be in [0, 1]");
  const double rho = shape.rho;
  const double beta = shape.beta;
  const double ratio = beta / (1.0 - beta);
  if (alpha < 1.0) {
    const double denominator = alpha * alpha * beta * (rho - 1.0) -
                               alpha * (rho * beta + rho + beta * ratio) + rho + ratio;
    return alpha * (1.0 - alpha) * (rho - 1.0) * (1.0 - alpha * beta) / (m * denominator);
  }
  // denominator = (1 - alpha) (rho + ratio - beta (rho - 1) alpha)
  return (rho - 1.0) * (1.0 - beta) / (m * (rho + ratio - beta * (rho - 1.0)));
}

OptimalAlpha optimal_alpha(const ModelShape& shape) {
  shape.validate();
  require(shape.rho > 1.0, ErrorCode::InvalidShape, "optimal alpha needs rho > 1");
  const double rho = shape.rho;
  const double beta = shape.beta;
  const double x = rho - beta * (rho - 1.0);
  const double root = std::sqrt(x);

  OptimalAlpha out;
  const double stationary = (x - root) / (beta * (1.0 - beta) * (rho - 1.0));
  out.alternate_form = root / (beta * (1.0 + root));
  out.clamped = stationary >= 1.0;
  out.alpha = std::min(1.0, stationary);
  return out;
}

double mean_conductance_community(double kappa, double rho) {
  require(kappa > 0.0 && kappa < 1.0, ErrorCode::InvalidArgument, "kappa must lie in (0, 1)");
  require(rho > 0.0, ErrorCode::InvalidArgument, "rho must be positive");
  const double mixed = kappa * (1.0 - kappa);
  return mixed / (std::min(kappa * kappa * rho, (1.0 - kappa) * (1.0 - kappa)) + mixed);
}

double mean_conductance_superset(double gamma, double kappa, double c) {
  const double mixed = gamma * (1.0 - gamma);
  return mixed / (std::min(gamma * gamma + kappa * kappa * c, (1.0 - gamma) * (1.0 - gamma)) +
                  mixed);
}

GammaScan min_conductance_gamma(double kappa, double c) {
  require(kappa >= 0.0 && kappa < 1.0, ErrorCode::InvalidArgument, "kappa must lie in [0, 1)");
  require(c >= 0.0, ErrorCode::InvalidArgument, "c must be nonnegative");
  constexpr int kSteps = 10000;
  GammaScan best{0.0, 2.0};
  for (int i = static_cast<int>(std::floor(kappa * kSteps)) + 1; i < kSteps; ++i) {
    const double gamma = static_cast<double>(i) / kSteps;
    if (gamma <= kappa) continue;
    const double value = mean_conductance_superset(gamma, kappa, c);
    if (value < best.value) best = {gamma, value};
  }
  return best;
}

}  // namespace pprlab
