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


#ifndef PPRLAB_CLI_EXPERIMENTS_HPP_
#define PPRLAB_CLI_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pprlab/cli/config.hpp"
#include "pprlab/cli/svg.hpp"
#include "pprlab/diagnostics.hpp"
#include "pprlab/mean_field.hpp"
#include "pprlab/ppr.hpp"

namespace pprlab::cli {

struct ReportRow {
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;
  /// Wall-clock time; kept out of the deterministic outputs.
  double runtime_ms = 0.0;
};

struct Aggregate {
  double mean = 0.0;
  double se = 0.0;
};

struct ExperimentReport {
  std::string preset;
  std::uint64_t master_seed = 0;
  std::vector<std::string> metrics;
  std::vector<ReportRow> rows;
  /// Echo of the settings that produced the rows.
  nlohmann::json settings = nlohmann::json::object();

  /// Throws InvalidArgument for an unknown metric.
  std::size_t column(std::string_view metric) const;
  std::vector<double> values(std::string_view metric) const;
  /// Mean and standard error over rows, recomputed on every call.
  Aggregate aggregate(std::string_view metric) const;
  double mean(std::string_view metric) const { return aggregate(metric).mean; }
};

/// replicate,seed,<metrics...>; values printed round-trip exact.
std::string rows_csv(const ExperimentReport& report);
/// metric,mean,stderr
std::string aggregate_csv(const ExperimentReport& report);
/// replicate,seed,runtime_ms
std::string timing_csv(const ExperimentReport& report);
nlohmann::json summary_json(const ExperimentReport& report);

/// Writes <preset>.csv, <preset>_aggregate.csv, <preset>.json and
/// <preset>_timing.csv under `out_dir`. Only the timing file varies
/// between identical runs.
void write_report(const ExperimentReport& report, const std::filesystem::path& out_dir);

struct PresetInfo {
  std::string_view name;
  std::string_view description;
};

std::span<const PresetInfo> preset_registry();
bool is_preset(std::string_view name);

struct RunOptions {
  std::size_t replicates = 10;
  std::uint64_t master_seed = 1;
  /// Nothing is written when unset.
  std::optional<std::filesystem::path> out_dir;
};

/// Runs a registered preset end to end. Throws UnknownPreset.
ExperimentReport run_preset(std::string_view name, const RunOptions& options);

/// Runs an explicit spec: per replicate error, rel_l2 against the mean
/// field, and best sweep conductance of the method's scores. Replicate
/// seeds derive from spec.config.seed; options.master_seed is ignored.
ExperimentReport run_spec(const ExperimentSpec& spec, const RunOptions& options);

enum class TableKind { Table1, Table2 };

/// Exact PPR (top-m) and lazy APPR with and without degree scaling on the
/// n = 10^4, m = 2000, k = 20 setting: alpha 0.85 / eps 1e-8 or alpha 0.99 /
/// eps 1e-7.
ExperimentReport run_table(TableKind which, const RunOptions& options);
/// Two-row, three-column layout of the replicate means.
std::string table_csv(const ExperimentReport& table);

/// n = 10^4, m = 200, k = 20: degree ranking, PPR at alpha 0.7 and the
/// random-guess baseline 1 - m/n.
ExperimentReport run_small_community(const RunOptions& options);

/// Conductance of C, of the top-m PPR set, and of the APPR sweep
/// (alpha 0.99, eps 1e-7, lazy, no degree scaling) before and after
/// truncation to m.
ExperimentReport run_conductance_sweep(const RunOptions& options);

/// pibar_1 - pibar_2 over an alpha grid on [0, 0.999] for k = 2 and k = 200
/// (from the 3x3 system, so the k-independence is checked, not assumed).
struct GapCurves {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> alpha;
  std::vector<double> gap_k2;
  std::vector<double> gap_k200;
  OptimalAlpha optimum;
  double grid_argmax = 0.0;
  double max_curve_difference = 0.0;
};

GapCurves gap_curves(std::size_t n, std::size_t m, std::size_t points = 1000);
std::string gap_curves_csv(const GapCurves& curves);
SvgPlot gap_plot(const GapCurves& curves);
/// Writes <stem>.csv and <stem>.svg.
void plot_gap_curves(const GapCurves& curves, const std::filesystem::path& stem);

/// Scores against node index with the mean-field step function and a
/// marker at the community boundary m. The y axis spans [0, 1.05 max].
SvgPlot score_plot(const ScoreVector& scores, const ScoreVector& meanfield, std::size_t m);
void plot_scores(const ScoreVector& scores, const ScoreVector& meanfield, std::size_t m,
                 const std::filesystem::path& out);

/// Calls fn(i) for every i in [0, count) across hardware threads.
/// Rethrows the first exception after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

struct TrendPoint {
  std::size_t n = 0;
  double value = 0.0;
  double se = 0.0;
};

enum class TrendKind { Spectral, Probe, Cov };

/// For each n: the log_squared model with m = n/5 and spec.config.k capped
/// at m. Spectral reports spectral_deviation / sqrt(ln n / (n p)) over
/// `replicates` graphs; Probe the per-graph concentration frequency at
/// eps_scale 1; Cov Var/E^2 at node m-1 with its jackknife error.
std::vector<TrendPoint> trend(TrendKind kind, std::span<const std::size_t> n_grid, std::size_t k,
                              double alpha, std::size_t replicates, std::uint64_t seed);
/// n,value,stderr
std::string trend_csv(std::span<const TrendPoint> points);

/// Every diagnostic for one spec as a JSON document.
nlohmann::json diagnose_json(const ExperimentSpec& spec, std::size_t replicates);

}  // namespace pprlab::cli

#endif  // PPRLAB_CLI_EXPERIMENTS_HPP_
