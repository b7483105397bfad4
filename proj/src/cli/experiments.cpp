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


#include "pprlab/cli/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "pprlab/appr.hpp"
#include "pprlab/error.hpp"
#include "pprlab/rng.hpp"
#include "pprlab/stats.hpp"

namespace pprlab::cli {

namespace {

using Clock = std::chrono::steady_clock;

// The setting shared by the figure, table and conductance presets.
constexpr std::size_t kPresetN = 10000;
constexpr std::size_t kPresetM = 2000;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json config_json(const PlantedGraphConfig& c) {
  return {{"n", c.n}, {"m", c.m}, {"k", c.k}, {"p", c.p}, {"q", c.q}, {"seed", c.seed}};
}

using ReplicateFn = std::function<std::vector<double>(std::size_t, const PlantedGraphConfig&)>;

ExperimentReport run_replicates(std::string preset, const PlantedGraphConfig& base,
                                std::vector<std::string> metrics, std::size_t replicates,
                                const ReplicateFn& fn) {
  require(replicates >= 1, ErrorCode::InvalidArgument, "replicates must be >= 1");
  ExperimentReport report;
  report.preset = std::move(preset);
  report.master_seed = base.seed;
  report.metrics = std::move(metrics);
  report.rows.resize(replicates);
  parallel_for(replicates, [&](std::size_t r) {
    const PlantedGraphConfig cfg = base.replica(r);
    const auto t0 = Clock::now();
    std::vector<double> values = fn(r, cfg);
    const auto t1 = Clock::now();
    require(values.size() == report.metrics.size(), ErrorCode::InvalidArgument,
            "replicate produced the wrong number of metrics");
    report.rows[r] = {r, cfg.seed, std::move(values),
                      std::chrono::duration<double, std::milli>(t1 - t0).count()};
  });
  report.settings["config"] = config_json(base);
  report.settings["replicates"] = replicates;
  return report;
}

// Top `count` nodes by value; equal values are ordered by a permutation
// drawn from `seed` so that ties carry no information about node ids.
NodeSet rank_top_shuffled_ties(std::span<const double> values, std::size_t count,
                               std::uint64_t seed) {
  const std::size_t n = values.size();
  std::vector<std::uint64_t> key(n);
  Rng rng(seed);
  for (auto& k : key) k = rng.next_u64();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count - 1),
                   order.end(), [&](NodeId a, NodeId b) {
                     if (values[a] != values[b]) return values[a] > values[b];
                     if (key[a] != key[b]) return key[a] < key[b];
                     return a < b;
                   });
  order.resize(count);
  return NodeSet::from_ids(std::move(order));
}

std::vector<double> degree_values(const Graph& graph) {
  std::vector<double> out(graph.num_nodes());
  for (NodeId v = 0; v < out.size(); ++v) out[v] = graph.degree(v);
  return out;
}

// Sweep cluster truncated to the first m nodes of the ranking.
NodeSet truncated_cluster(const SweepResult& sw, std::size_t m) {
  return sw.prefix(std::min(sw.best_prefix, m));
}

void write_scores_pair_csv(const std::filesystem::path& path, const ScoreVector& scores,
                           const ScoreVector& meanfield) {
  std::string out = "node,score,meanfield\n";
  for (std::size_t v = 0; v < scores.size(); ++v) {
    out += std::to_string(v) + "," + num(scores.values[v]) + "," + num(meanfield.values[v]) + "\n";
  }
  write_text_file(path, out);
}

void maybe_write(const ExperimentReport& report, const RunOptions& options) {
  if (options.out_dir) write_report(report, *options.out_dir);
}

// ---------------------------------------------------------------- figures

ExperimentReport run_figure(std::string_view name, std::size_t k, const RunOptions& options) {
  constexpr double kAlpha = 0.8;
  const auto base = PlantedGraphConfig::log_squared(kPresetN, kPresetM, k, options.master_seed);
  ScoreVector first_scores;
  ScoreVector first_mf;
  auto report = run_replicates(
      std::string(name), base, {"error", "rel_l2", "best_conductance"}, options.replicates,
      [&](std::size_t r, const PlantedGraphConfig& cfg) {
        const Graph g = sample_planted_er(cfg);
        ScoreVector pi = ppr_iterate(g, restart_vector(cfg), kAlpha);
        ScoreVector mf = expand(mean_field_ppr(cfg, kAlpha));
        std::vector<double> out = {classification_error(rank_top(pi, cfg.m), cfg),
                                   relative_l2(pi.values, mf.values),
                                   sweep(g, pi).best_conductance};
        if (r == 0) {
          first_scores = std::move(pi);
          first_mf = std::move(mf);
        }
        return out;
      });
  report.settings["alpha"] = kAlpha;
  report.settings["method"] = "ppr";
  if (options.out_dir) {
    write_report(report, *options.out_dir);
    plot_scores(first_scores, first_mf, base.m, *options.out_dir / (report.preset + ".svg"));
    write_scores_pair_csv(*options.out_dir / (report.preset + "_scores.csv"), first_scores,
                          first_mf);
  }
  return report;
}

ExperimentReport run_gap_preset(std::string_view name, std::size_t m, const RunOptions& options) {
  const GapCurves curves = gap_curves(kPresetN, m);
  ExperimentReport report;
  report.preset = std::string(name);
  report.master_seed = options.master_seed;
  report.metrics = {"alpha_opt", "alpha_opt_grid", "curve_difference"};
  report.rows.push_back({0, options.master_seed,
                         {curves.optimum.alpha, curves.grid_argmax, curves.max_curve_difference},
                         0.0});
  const auto shape = ModelShape::from_config(PlantedGraphConfig::log_squared(kPresetN, m, 2, 0));
  report.settings = {{"n", kPresetN},
                     {"m", m},
                     {"rho", shape.rho},
                     {"beta", shape.beta},
                     {"alpha_opt_alternate", curves.optimum.alternate_form},
                     {"clamped", curves.optimum.clamped},
                     {"grid_points", curves.alpha.size()}};
  if (options.out_dir) {
    write_report(report, *options.out_dir);
    plot_gap_curves(curves, *options.out_dir / (report.preset + "_gap"));
  }
  return report;
}

// --------------------------------------------------------- run_spec pieces

std::vector<std::string> spec_metrics(Method method) {
  switch (method) {
    case Method::Ppr: return {"error", "rel_l2", "best_conductance"};
    case Method::Appr: return {"error", "rel_l2", "best_conductance", "pushes"};
    case Method::MeanField: return {"error", "best_conductance"};
    case Method::DegreeRank: return {"error", "best_conductance"};
  }
  return {};
}

constexpr PresetInfo kPresets[] = {
    {"fig1", "PPR vs mean field, n=10^4, m=2000, k=200, alpha=0.8"},
    {"fig2", "PPR vs mean field, n=10^4, m=2000, k=20, alpha=0.8"},
    {"fig3", "PPR vs mean field, n=10^4, m=2000, k=2, alpha=0.8"},
    {"fig4", "mean-field gap curves and optimal alpha, m=3000"},
    {"fig5", "mean-field gap curves and optimal alpha, m=300"},
    {"table1", "PPR and lazy APPR errors at alpha=0.85, eps=1e-8 (k=20)"},
    {"table2", "PPR and lazy APPR errors at alpha=0.99, eps=1e-7 (k=20)"},
    {"small_community", "m=200: degree ranking, PPR at alpha=0.7, random baseline"},
    {"conductance_sweep", "conductance of C, top-m PPR, and the APPR sweep set"},
};

}  // namespace

// ------------------------------------------------------------------ report

std::size_t ExperimentReport::column(std::string_view metric) const {
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    if (metrics[i] == metric) return i;
  }
  throw Error(ErrorCode::InvalidArgument, "report has no metric '" + std::string(metric) + "'");
}

std::vector<double> ExperimentReport::values(std::string_view metric) const {
  const std::size_t c = column(metric);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.values[c]);
  return out;
}

Aggregate ExperimentReport::aggregate(std::string_view metric) const {
  const auto xs = values(metric);
  return {sample_mean(xs), standard_error(xs)};
}

std::string rows_csv(const ExperimentReport& report) {
  std::string out = "replicate,seed";
  for (const auto& m : report.metrics) out += "," + m;
  out += "\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.replicate) + "," + std::to_string(row.seed);
    for (double v : row.values) out += "," + num(v);
    out += "\n";
  }
  return out;
}

std::string aggregate_csv(const ExperimentReport& report) {
  std::string out = "metric,mean,stderr\n";
  for (const auto& m : report.metrics) {
    const auto a = report.aggregate(m);
    out += m + "," + num(a.mean) + "," + num(a.se) + "\n";
  }
  return out;
}

std::string timing_csv(const ExperimentReport& report) {
  std::string out = "replicate,seed,runtime_ms\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.replicate) + "," + std::to_string(row.seed) + "," +
           num(row.runtime_ms) + "\n";
  }
  return out;
}

nlohmann::json summary_json(const ExperimentReport& report) {
  nlohmann::json aggregates = nlohmann::json::object();
  for (const auto& m : report.metrics) {
    const auto a = report.aggregate(m);
    aggregates[m] = {{"mean", a.mean}, {"stderr", a.se}};
  }
  return {{"preset", report.preset},
          {"master_seed", report.master_seed},
          {"replicates", report.rows.size()},
          {"settings", report.settings},
          {"aggregates", aggregates}};
}

void write_report(const ExperimentReport& report, const std::filesystem::path& out_dir) {
  write_text_file(out_dir / (report.preset + ".csv"), rows_csv(report));
  write_text_file(out_dir / (report.preset + "_aggregate.csv"), aggregate_csv(report));
  write_text_file(out_dir / (report.preset + ".json"), summary_json(report).dump(2) + "\n");
  write_text_file(out_dir / (report.preset + "_timing.csv"), timing_csv(report));
}

// ----------------------------------------------------------------- presets

std::span<const PresetInfo> preset_registry() { return kPresets; }

bool is_preset(std::string_view name) {
  return std::any_of(std::begin(kPresets), std::end(kPresets),
                     [&](const PresetInfo& p) { return p.name == name; });
}

ExperimentReport run_preset(std::string_view name, const RunOptions& options) {
  if (name == "fig1") return run_figure(name, 200, options);
  if (name == "fig2") return run_figure(name, 20, options);
  if (name == "fig3") return run_figure(name, 2, options);
  if (name == "fig4") return run_gap_preset(name, 3000, options);
  if (name == "fig5") return run_gap_preset(name, 300, options);
  if (name == "table1") return run_table(TableKind::Table1, options);
  if (name == "table2") return run_table(TableKind::Table2, options);
  if (name == "small_community") return run_small_community(options);
  if (name == "conductance_sweep") return run_conductance_sweep(options);
  throw Error(ErrorCode::UnknownPreset, "unknown preset '" + std::string(name) + "'");
}

ExperimentReport run_spec(const ExperimentSpec& spec, const RunOptions& options) {
  spec.validate();
  auto report = run_replicates(
      spec.name, spec.config, spec_metrics(spec.method), options.replicates,
      [&](std::size_t, const PlantedGraphConfig& cfg) -> std::vector<double> {
        const Graph g = sample_planted_er(cfg);
        SweepOptions sw_options;
        sw_options.degree_scaling = spec.degree_scaling;
        const auto mf = expand(mean_field_ppr(cfg, spec.alpha));
        switch (spec.method) {
          case Method::Ppr: {
            const auto pi = ppr_iterate(g, restart_vector(cfg), spec.alpha);
            return {classification_error(rank_top(pi, cfg.m), cfg),
                    relative_l2(pi.values, mf.values), sweep(g, pi, sw_options).best_conductance};
          }
          case Method::Appr: {
            const double eps =
                spec.eps ? *spec.eps : acl_parameters(1.0, g.num_edges(), spec.b).eps;
            ApprOptions push;
            push.lazy = spec.lazy;
            const auto appr = appr_push(g, restart_vector(cfg), spec.alpha, eps, push);
            const auto sw = sweep(g, appr.p, sw_options);
            return {classification_error(truncated_cluster(sw, cfg.m), cfg),
                    relative_l2(appr.dense_scores().values, mf.values), sw.best_conductance,
                    static_cast<double>(appr.pushes)};
          }
          case Method::MeanField:
            return {classification_error(rank_top(mf, cfg.m), cfg),
                    sweep(g, mf, sw_options).best_conductance};
          case Method::DegreeRank: {
            const auto deg = degree_values(g);
            ScoreVector scores{deg, 0.0, ScoreKind::Exact, 0};
            return {classification_error(
                        rank_top_shuffled_ties(deg, cfg.m, derive_seed(cfg.seed, 0xde9)), cfg),
                    sweep(g, scores, sw_options).best_conductance};
          }
        }
        return {};
      });
  report.settings = to_json(spec);
  report.settings["replicates"] = options.replicates;
  maybe_write(report, options);
  return report;
}

ExperimentReport run_table(TableKind which, const RunOptions& options) {
  const bool first = which == TableKind::Table1;
  const double alpha = first ? 0.85 : 0.99;
  const double eps = first ? 1e-8 : 1e-7;
  const auto base = PlantedGraphConfig::log_squared(kPresetN, kPresetM, 20, options.master_seed);
  auto report = run_replicates(
      first ? "table1" : "table2", base,
      {"ppr_error", "appr_error_unscaled", "appr_error_scaled", "pushes"}, options.replicates,
      [&](std::size_t, const PlantedGraphConfig& cfg) -> std::vector<double> {
        const Graph g = sample_planted_er(cfg);
        const auto pi = ppr_iterate(g, restart_vector(cfg), alpha);
        ApprOptions push;
        push.lazy = true;
        const auto appr = appr_push(g, restart_vector(cfg), alpha, eps, push);
        SweepOptions plain;
        plain.degree_scaling = false;
        SweepOptions scaled;
        scaled.degree_scaling = true;
        return {classification_error(rank_top(pi, cfg.m), cfg),
                classification_error(truncated_cluster(sweep(g, appr.p, plain), cfg.m), cfg),
                classification_error(truncated_cluster(sweep(g, appr.p, scaled), cfg.m), cfg),
                static_cast<double>(appr.pushes)};
      });
  report.settings["alpha"] = alpha;
  report.settings["eps"] = eps;
  report.settings["lazy"] = true;
  if (options.out_dir) {
    write_report(report, *options.out_dir);
    write_text_file(*options.out_dir / (report.preset + "_table.csv"), table_csv(report));
    SvgPlot plot(report.preset + ": error per replicate", "replicate", "error");
    std::vector<double> x(report.rows.size());
    std::iota(x.begin(), x.end(), 0.0);
    plot.add_points("PPR", "#1f77b4", x, report.values("ppr_error"));
    plot.add_points("APPR without degree scaling", "#2ca02c", x,
                    report.values("appr_error_unscaled"));
    plot.add_points("APPR with degree scaling", "#d62728", x, report.values("appr_error_scaled"));
    plot.set_y_range(0.0, 1.0);
    write_text_file(*options.out_dir / (report.preset + ".svg"), plot.render());
  }
  return report;
}

std::string table_csv(const ExperimentReport& table) {
  char head[96];
  std::snprintf(head, sizeof head, "alpha=%g eps=%g", table.settings.at("alpha").get<double>(),
                table.settings.at("eps").get<double>());
  char buf[256];
  std::string out = std::string(head) + ",without degree scaling,with degree scaling\n";
  std::snprintf(buf, sizeof buf, "PPR,%.4f,-\n", table.mean("ppr_error"));
  out += buf;
  std::snprintf(buf, sizeof buf, "APPR,%.4f,%.4f\n", table.mean("appr_error_unscaled"),
                table.mean("appr_error_scaled"));
  out += buf;
  return out;
}

ExperimentReport run_small_community(const RunOptions& options) {
  constexpr double kAlpha = 0.7;
  const auto base = PlantedGraphConfig::log_squared(kPresetN, 200, 20, options.master_seed);
  const double baseline =
      static_cast<double>(base.n - base.m) / static_cast<double>(base.n);
  ScoreVector first_scores;
  ScoreVector first_mf;
  auto report = run_replicates(
      "small_community", base, {"degree_error", "ppr_error", "baseline"}, options.replicates,
      [&](std::size_t r, const PlantedGraphConfig& cfg) -> std::vector<double> {
        const Graph g = sample_planted_er(cfg);
        const auto deg = degree_values(g);
        ScoreVector pi = ppr_iterate(g, restart_vector(cfg), kAlpha);
        std::vector<double> out = {
            classification_error(rank_top_shuffled_ties(deg, cfg.m, derive_seed(cfg.seed, 0xde9)),
                                 cfg),
            classification_error(rank_top(pi, cfg.m), cfg), baseline};
        if (r == 0) {
          first_scores = std::move(pi);
          first_mf = expand(mean_field_ppr(cfg, kAlpha));
        }
        return out;
      });
  report.settings["alpha"] = kAlpha;
  if (options.out_dir) {
    write_report(report, *options.out_dir);
    plot_scores(first_scores, first_mf, base.m, *options.out_dir / "small_community.svg");
  }
  return report;
}

ExperimentReport run_conductance_sweep(const RunOptions& options) {
  constexpr double kAlpha = 0.99;
  constexpr double kEps = 1e-7;
  const auto base = PlantedGraphConfig::log_squared(kPresetN, kPresetM, 20, options.master_seed);
  std::vector<double> first_profile;
  auto report = run_replicates(
      "conductance_sweep", base,
      {"community_conductance", "ppr_conductance", "best_conductance", "best_size",
       "truncated_conductance", "appr_error"},
      options.replicates, [&](std::size_t r, const PlantedGraphConfig& cfg) -> std::vector<double> {
        const Graph g = sample_planted_er(cfg);
        const auto pi = ppr_iterate(g, restart_vector(cfg), kAlpha);
        ApprOptions push;
        push.lazy = true;
        const auto appr = appr_push(g, restart_vector(cfg), kAlpha, kEps, push);
        SweepOptions plain;
        plain.degree_scaling = false;
        auto sw = sweep(g, appr.p, plain);
        const NodeSet cluster = truncated_cluster(sw, cfg.m);
        std::vector<double> out = {conductance(g, cfg.community()),
                                   conductance(g, rank_top(pi, cfg.m)), sw.best_conductance,
                                   static_cast<double>(sw.best_prefix), conductance(g, cluster),
                                   classification_error(cluster, cfg)};
        if (r == 0) first_profile = std::move(sw.prefix_conductance);
        return out;
      });
  const double kappa = static_cast<double>(base.m) / static_cast<double>(base.n);
  report.settings["alpha"] = kAlpha;
  report.settings["eps"] = kEps;
  report.settings["lazy"] = true;
  report.settings["degree_scaling"] = false;
  report.settings["meanfield_conductance"] = mean_conductance_community(kappa, base.q / base.p);
  if (options.out_dir) {
    write_report(report, *options.out_dir);
    SvgPlot plot("sweep conductance profile (replicate 0)", "prefix size", "conductance");
    std::vector<double> x(first_profile.size());
    std::iota(x.begin(), x.end(), 1.0);
    plot.add_line("APPR sweep", "#1f77b4", x, first_profile);
    plot.add_vline(static_cast<double>(base.m), "m", "#d62728");
    plot.add_vline(report.rows[0].values[report.column("best_size")], "best", "#2ca02c");
    plot.set_y_range(0.0, 1.05);
    write_text_file(*options.out_dir / "conductance_sweep.svg", plot.render());
  }
  return report;
}

// ---------------------------------------------------------------- plotting

GapCurves gap_curves(std::size_t n, std::size_t m, std::size_t points) {
  require(points >= 2, ErrorCode::InvalidArgument, "need at least two grid points");
  require(m >= 200 && m < n, ErrorCode::InvalidArgument, "gap curves need 200 <= m < n");
  GapCurves out;
  out.n = n;
  out.m = m;
  const auto low = PlantedGraphConfig::log_squared(n, m, 2, 0);
  const auto high = PlantedGraphConfig::log_squared(n, m, 200, 0);
  const auto shape = ModelShape::from_config(low);
  out.optimum = optimal_alpha(shape);
  double best = -1.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double a = 0.999 * static_cast<double>(i) / static_cast<double>(points - 1);
    const auto s2 = mean_field_solve_3x3(low, a);
    const auto s200 = mean_field_solve_3x3(high, a);
    out.alpha.push_back(a);
    out.gap_k2.push_back(s2.pi1 - s2.pi2);
    out.gap_k200.push_back(s200.pi1 - s200.pi2);
    out.max_curve_difference =
        std::max(out.max_curve_difference, std::abs(out.gap_k2.back() - out.gap_k200.back()));
    const double g = mf_gap(shape, static_cast<double>(m), a);
    if (g > best) {
      best = g;
      out.grid_argmax = a;
    }
  }
  return out;
}

std::string gap_curves_csv(const GapCurves& curves) {
  std::string out = "alpha,gap_k2,gap_k200\n";
  for (std::size_t i = 0; i < curves.alpha.size(); ++i) {
    out += num(curves.alpha[i]) + "," + num(curves.gap_k2[i]) + "," + num(curves.gap_k200[i]) +
           "\n";
  }
  return out;
}

SvgPlot gap_plot(const GapCurves& curves) {
  SvgPlot plot("mean-field gap, n=" + std::to_string(curves.n) + ", m=" + std::to_string(curves.m),
               "alpha", "pibar1 - pibar2");
  plot.add_line("k = 2", "#1f77b4", curves.alpha, curves.gap_k2);
  plot.add_line("k = 200", "#d62728", curves.alpha, curves.gap_k200);
  char label[64];
  std::snprintf(label, sizeof label, "alpha_opt = %.4f", curves.optimum.alpha);
  plot.add_vline(curves.optimum.alpha, label, "#2ca02c");
  plot.set_x_range(0.0, 1.0);
  return plot;
}

void plot_gap_curves(const GapCurves& curves, const std::filesystem::path& stem) {
  auto base = stem.string();
  write_text_file(base + ".csv", gap_curves_csv(curves));
  write_text_file(base + ".svg", gap_plot(curves).render());
}

SvgPlot score_plot(const ScoreVector& scores, const ScoreVector& meanfield, std::size_t m) {
  require(scores.size() == meanfield.size(), ErrorCode::InvalidArgument,
          "score and mean-field vectors differ in length");
  require(!scores.values.empty(), ErrorCode::InvalidArgument, "empty score vector");
  const std::size_t n = scores.size();
  std::vector<double> x(n);
  std::iota(x.begin(), x.end(), 0.0);

  // The mean field is block constant: draw it as a step function.
  std::vector<double> sx = {0.0};
  std::vector<double> sy = {meanfield.values[0]};
  for (std::size_t v = 1; v < n; ++v) {
    if (meanfield.values[v] != meanfield.values[v - 1]) {
      sx.push_back(static_cast<double>(v));
      sy.push_back(meanfield.values[v - 1]);
      sx.push_back(static_cast<double>(v));
      sy.push_back(meanfield.values[v]);
    }
  }
  sx.push_back(static_cast<double>(n - 1));
  sy.push_back(meanfield.values[n - 1]);

  double top = 0.0;
  for (double v : scores.values) top = std::max(top, v);
  for (double v : meanfield.values) top = std::max(top, v);

  SvgPlot plot("PPR and its mean-field model", "node index", "score");
  plot.add_points("PPR", "#1f77b4", std::move(x), scores.values);
  plot.add_line("mean field", "#d62728", std::move(sx), std::move(sy));
  plot.add_vline(static_cast<double>(m), "C boundary (m)", "#555555");
  plot.set_x_range(0.0, static_cast<double>(std::max<std::size_t>(n - 1, 1)));
  plot.set_y_range(0.0, top > 0.0 ? top * 1.05 : 1.0);
  return plot;
}

void plot_scores(const ScoreVector& scores, const ScoreVector& meanfield, std::size_t m,
                 const std::filesystem::path& out) {
  write_text_file(out, score_plot(scores, meanfield, m).render());
}

// ------------------------------------------------------------- concurrency

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// ------------------------------------------------------------- diagnostics

std::vector<TrendPoint> trend(TrendKind kind, std::span<const std::size_t> n_grid, std::size_t k,
                              double alpha, std::size_t replicates, std::uint64_t seed) {
  require(replicates >= 2, ErrorCode::InvalidArgument, "trend needs at least 2 replicates");
  std::vector<TrendPoint> out;
  for (std::size_t n : n_grid) {
    const std::size_t m = n / 5;
    const auto cfg = PlantedGraphConfig::log_squared(n, m, std::min(k, m), seed);
    if (kind == TrendKind::Cov) {
      const auto rep = cov_estimate(cfg, alpha, NodeClass::InCommunityNonSeed,
                                    std::max<std::size_t>(30, replicates));
      out.push_back({n, rep.summary.cov2, rep.summary.cov2_se});
      continue;
    }
    std::vector<double> values(replicates);
    parallel_for(replicates, [&](std::size_t r) {
      const auto rc = cfg.replica(r);
      if (kind == TrendKind::Spectral) {
        const Graph g = sample_planted_er(rc);
        const double scale =
            std::sqrt(std::log(static_cast<double>(n)) / (static_cast<double>(n) * rc.p));
        values[r] = spectral_deviation(g, rc) / scale;
      } else {
        values[r] = concentration_probe(rc, alpha, 1.0, 1);
      }
    });
    out.push_back({n, sample_mean(values), standard_error(values)});
  }
  return out;
}

std::string trend_csv(std::span<const TrendPoint> points) {
  std::string out = "n,value,stderr\n";
  for (const auto& p : points) out += std::to_string(p.n) + "," + num(p.value) + "," + num(p.se) + "\n";
  return out;
}

nlohmann::json diagnose_json(const ExperimentSpec& spec, std::size_t replicates) {
  spec.validate();
  const auto& cfg = spec.config;
  const double alpha = spec.alpha;
  nlohmann::json out;
  out["config"] = to_json(spec);

  const auto rep = concentration_report(cfg, alpha, 1.0);
  out["concentration"] = {{"rel_l2", rep.rel_l2},
                          {"constant", rep.constant},
                          {"bound_valid", rep.bound.valid},
                          {"note", "bound holds up to the unspecified constant C"}};
  if (rep.bound.valid) out["concentration"]["bound"] = rep.bound.value;

  if (cfg.n <= kSpectralMaxNodes) {
    try {
      const Graph g = sample_planted_er(cfg);
      const double value = spectral_deviation(g, cfg);
      const double scale =
          std::sqrt(std::log(static_cast<double>(cfg.n)) / (static_cast<double>(cfg.n) * cfg.p));
      out["spectral"] = {{"value", value}, {"ratio", value / scale}};
    } catch (const Error& e) {
      out["spectral"] = {{"skipped", e.what()}};
    }
  } else {
    out["spectral"] = {{"skipped", "n above the spectral size guard"}};
  }

  out["probe"] = {{"eps_scale", 1.0},
                  {"replicates", replicates},
                  {"frequency", concentration_probe(cfg, alpha, 1.0, replicates)}};

  const std::size_t mc = std::max<std::size_t>(30, replicates);
  for (NodeClass c : {NodeClass::InCommunityNonSeed, NodeClass::OutsideCommunity}) {
    if (c == NodeClass::InCommunityNonSeed && cfg.k == cfg.m) continue;
    const auto cov = cov_estimate(cfg, alpha, c, mc);
    out["cov"][std::string(to_string(c))] = {{"node", cov.node},
                                             {"replicates", cov.replicates},
                                             {"mean", cov.summary.mean},
                                             {"variance", cov.summary.variance},
                                             {"variance_stderr", cov.summary.variance_se},
                                             {"cov2", cov.summary.cov2},
                                             {"cov2_stderr", cov.summary.cov2_se}};
  }

  const auto eb = expectation_bound_check(cfg, alpha, mc);
  auto check_json = [](const ClassBoundCheck& c) {
    return nlohmann::json{{"checked", c.checked}, {"node", c.node},   {"mean", c.mean},
                          {"stderr", c.mean_se},  {"bound", c.bound}, {"pass", c.pass}};
  };
  out["expectation_bound"] = {{"replicates", eb.replicates},
                              {"in_community", check_json(eb.in_community)},
                              {"outside", check_json(eb.outside)},
                              {"pass", eb.pass()}};
  return out;
}

}  // namespace pprlab::cli
