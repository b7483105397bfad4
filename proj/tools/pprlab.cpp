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


// pprlab: command-line front end. See README.md for the verbs.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pprlab/appr.hpp"
#include "pprlab/cli/config.hpp"
#include "pprlab/cli/experiments.hpp"
#include "pprlab/diagnostics.hpp"
#include "pprlab/error.hpp"
#include "pprlab/graph.hpp"
#include "pprlab/mean_field.hpp"
#include "pprlab/ppr.hpp"

namespace fs = std::filesystem;
using namespace pprlab;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  std::size_t replicates = 10;
  std::string out_dir = "pprlab-out";
  std::string config;
};

// Model flags shared by the verbs that build a graph.
struct ModelFlags {
  std::optional<std::size_t> n, m, k;
  std::optional<double> p, q;
  std::string graph;

  void attach(CLI::App* app, bool with_graph) {
    app->add_option("--n", n, "number of nodes");
    app->add_option("--m", m, "community size");
    app->add_option("--k", k, "number of seeds");
    app->add_option("--p", p, "background edge probability (default 5 ln^2 n / n)");
    app->add_option("--q", q, "community edge probability (default 2p)");
    if (with_graph) app->add_option("--graph", graph, "edge list to use instead of sampling");
  }
};

cli::ExperimentSpec base_spec(const Globals& g, const ModelFlags& f) {
  cli::ExperimentSpec spec = g.config.empty() ? cli::ExperimentSpec{} : cli::load_spec(g.config);
  auto& c = spec.config;
  if (f.n || f.m || f.k) {
    const std::size_t n = f.n.value_or(c.n);
    const std::size_t m = f.m.value_or(f.n ? n / 5 : c.m);
    const std::size_t k = f.k.value_or(std::min(c.k, m));
    // A new size resets p and q to the formula; --p/--q still override.
    c = PlantedGraphConfig::log_squared(n, m, k, c.seed);
  }
  if (f.p) c.p = *f.p;
  if (f.q) c.q = *f.q;
  if (g.seed) c.seed = *g.seed;
  spec.replicates = g.replicates;
  spec.validate();
  return spec;
}

// Reads --graph, if given. Its node count stands in for an omitted --n.
std::optional<Graph> read_graph_flag(ModelFlags& f) {
  if (f.graph.empty()) return std::nullopt;
  std::ifstream in(f.graph);
  if (!in) throw Error(ErrorCode::IoError, "cannot open graph " + f.graph);
  Graph g = read_edge_list(in);
  if (!f.n) f.n = g.num_nodes();
  return g;
}

Graph load_or_sample(std::optional<Graph> loaded, const PlantedGraphConfig& config) {
  if (!loaded) return sample_planted_er(config);
  require(loaded->num_nodes() == config.n, ErrorCode::InvalidArgument,
          "graph has " + std::to_string(loaded->num_nodes()) + " nodes but the model says " +
              std::to_string(config.n));
  return std::move(*loaded);
}

void emit(const nlohmann::json& doc, const fs::path& file) {
  const std::string text = doc.dump(2) + "\n";
  cli::write_text_file(file, text);
  std::cout << text;
}

std::string numeric(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pprlab: personalized PageRank on planted-community random graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--seed", globals.seed, "master seed")->envname("PPRLAB_SEED");
  app.add_option("--replicates", globals.replicates, "independent replicates")
      ->check(CLI::PositiveNumber);
  app.add_option("--out-dir", globals.out_dir, "directory for output files");
  app.add_option("--config", globals.config, "JSON experiment config")->check(CLI::ExistingFile);

  // generate
  ModelFlags gen_flags;
  std::string gen_output;
  auto* gen = app.add_subcommand("generate", "sample a planted graph and write its edge list");
  gen_flags.attach(gen, false);
  gen->add_option("-o,--output", gen_output, "edge list path (default <out-dir>/graph.edges)");

  // ppr
  ModelFlags ppr_flags;
  std::optional<double> ppr_alpha;
  std::optional<int> ppr_steps;
  auto* ppr = app.add_subcommand("ppr", "exact personalized PageRank from the seed set");
  ppr_flags.attach(ppr, true);
  ppr->add_option("--alpha", ppr_alpha, "damping factor");
  ppr->add_option("--truncate", ppr_steps, "sum only paths shorter than this many steps");

  // appr
  ModelFlags appr_flags;
  std::optional<double> appr_alpha, appr_eps, appr_phi;
  int appr_b = 13;
  std::string appr_scaling = "on";
  bool appr_lazy = false;
  auto* appr = app.add_subcommand("appr", "approximate PageRank push, sweep and cluster");
  appr_flags.attach(appr, true);
  appr->add_option("--alpha", appr_alpha, "damping factor (default from --target-phi)");
  appr->add_option("--eps", appr_eps, "push tolerance (default 2^-b / (48 B))");
  appr->add_option("--b", appr_b, "ACL scale parameter b")->check(CLI::PositiveNumber);
  appr->add_option("--target-phi", appr_phi, "target conductance");
  appr->add_option("--degree-scaling", appr_scaling, "rank by p/d (on) or p (off)")
      ->check(CLI::IsMember({"on", "off"}));
  appr->add_flag("--lazy", appr_lazy, "lazy push: keep half the residual");

  // meanfield
  ModelFlags mf_flags;
  std::optional<double> mf_alpha;
  auto* mf = app.add_subcommand("meanfield", "closed-form mean-field PPR");
  mf_flags.attach(mf, false);
  mf->add_option("--alpha", mf_alpha, "damping factor");

  // opt-alpha
  ModelFlags opt_flags;
  std::size_t opt_points = 1000;
  auto* opt = app.add_subcommand("opt-alpha", "optimal damping factor and the gap curve");
  opt_flags.attach(opt, false);
  opt->add_option("--points", opt_points, "grid points on [0, 0.999]")->check(CLI::Range(2, 1000000));

  // diagnose
  ModelFlags diag_flags;
  std::optional<double> diag_alpha;
  std::string diag_trend;
  std::vector<std::size_t> diag_grid = {500, 1000, 2000, 4000};
  auto* diag = app.add_subcommand("diagnose", "concentration diagnostics");
  diag_flags.attach(diag, false);
  diag->add_option("--alpha", diag_alpha, "damping factor");
  diag->add_option("--trend", diag_trend, "emit an n,value,stderr table instead")
      ->check(CLI::IsMember({"spectral", "probe", "cov"}));
  diag->add_option("--n-grid", diag_grid, "node counts for --trend")->delimiter(',');

  // experiment
  std::string preset;
  bool list_presets = false;
  auto* exp = app.add_subcommand("experiment", "run a preset, or the --config experiment");
  exp->add_option("preset", preset, "preset name");
  exp->add_flag("--list", list_presets, "list presets");

  // tables
  auto* tables = app.add_subcommand("tables", "reproduce both error tables");

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path out_dir = globals.out_dir;
    if (gen->parsed()) {
      const auto spec = base_spec(globals, gen_flags);
      const Graph g = sample_planted_er(spec.config);
      const fs::path path = gen_output.empty() ? out_dir / "graph.edges" : fs::path(gen_output);
      std::ostringstream text;
      write_edge_list(text, g);
      cli::write_text_file(path, text.str());
      nlohmann::json doc = {{"path", path.string()},
                            {"config", cli::to_json(spec)},
                            {"edges", g.num_edges()}};
      std::cout << doc.dump(2) << "\n";
    } else if (ppr->parsed()) {
      auto loaded = read_graph_flag(ppr_flags);
      auto spec = base_spec(globals, ppr_flags);
      if (ppr_alpha) spec.alpha = *ppr_alpha;
      spec.validate();
      const Graph g = load_or_sample(std::move(loaded), spec.config);
      const auto nu = restart_vector(spec.config);
      const ScoreVector pi = ppr_steps ? ppr_truncated(g, nu, spec.alpha, *ppr_steps)
                                       : ppr_iterate(g, nu, spec.alpha);
      std::ostringstream csv;
      write_scores_csv(csv, pi);
      cli::write_text_file(out_dir / "ppr_scores.csv", csv.str());
      const auto mfv = expand(mean_field_ppr(spec.config, spec.alpha));
      emit({{"config", cli::to_json(spec)},
            {"sum", pi.sum()},
            {"error", classification_error(rank_top(pi, spec.config.m), spec.config)},
            {"rel_l2", relative_l2(pi.values, mfv.values)},
            {"scores", (out_dir / "ppr_scores.csv").string()}},
           out_dir / "ppr_metrics.json");
    } else if (appr->parsed()) {
      auto loaded = read_graph_flag(appr_flags);
      auto spec = base_spec(globals, appr_flags);
      const Graph g = load_or_sample(std::move(loaded), spec.config);
      std::optional<ApprParameters> acl;
      if (appr_phi || !appr_eps) acl = acl_parameters(appr_phi.value_or(1.0), g.num_edges(), appr_b);
      double alpha = spec.alpha;
      if (appr_alpha) {
        alpha = *appr_alpha;
      } else if (appr_phi) {
        alpha = acl->alpha;
      }
      const double eps = appr_eps ? *appr_eps : acl->eps;
      ClusterOptions options;
      options.degree_scaling = appr_scaling == "on";
      options.lazy = appr_lazy;
      options.target_phi = appr_phi;
      const auto result = appr_cluster(g, spec.config, alpha, eps, options);
      std::string ids;
      for (NodeId v : result.cluster.ids()) ids += std::to_string(v) + "\n";
      cli::write_text_file(out_dir / "appr_cluster.txt", ids);
      nlohmann::json doc = {{"alpha", alpha},
                            {"eps", eps},
                            {"pushes", result.appr.pushes},
                            {"support", result.appr.p.size()},
                            {"best_conductance", result.sweep.best_conductance},
                            {"best_prefix", result.sweep.best_prefix},
                            {"truncated", result.truncated},
                            {"cluster_size", result.cluster.size()},
                            {"error", classification_error(result.cluster, spec.config)},
                            {"cluster", (out_dir / "appr_cluster.txt").string()}};
      if (result.meets_target) doc["meets_target"] = *result.meets_target;
      emit(doc, out_dir / "appr_metrics.json");
    } else if (mf->parsed()) {
      auto spec = base_spec(globals, mf_flags);
      if (mf_alpha) spec.alpha = *mf_alpha;
      spec.validate();
      const auto& c = spec.config;
      const auto v = mean_field_ppr(c, spec.alpha);
      const auto shape = ModelShape::from_config(c);
      const double kappa = static_cast<double>(c.m) / static_cast<double>(c.n);
      emit({{"config", cli::to_json(spec)},
            {"pi0", v.pi0},
            {"pi1", v.pi1},
            {"pi2", v.pi2},
            {"total_mass", v.total_mass()},
            {"residual", mean_field_residual(v)},
            {"gap", v.pi1 - v.pi2},
            {"rho", shape.rho},
            {"beta", shape.beta},
            {"alpha_opt", optimal_alpha(shape).alpha},
            {"community_conductance", mean_conductance_community(kappa, shape.rho)}},
           out_dir / "meanfield.json");
    } else if (opt->parsed()) {
      const auto spec = base_spec(globals, opt_flags);
      const auto shape = ModelShape::from_config(spec.config);
      const auto best = optimal_alpha(shape);
      std::string csv = "alpha,gap\n";
      for (std::size_t i = 0; i < opt_points; ++i) {
        const double a = 0.999 * static_cast<double>(i) / static_cast<double>(opt_points - 1);
        csv += numeric(a) + "," + numeric(mf_gap(shape, static_cast<double>(spec.config.m), a)) +
               "\n";
      }
      cli::write_text_file(out_dir / "opt_alpha_gap.csv", csv);
      std::cout << "alpha_opt=" << numeric(best.alpha) << (best.clamped ? " (clamped)" : "")
                << "\n";
      std::cout << "gap curve: " << (out_dir / "opt_alpha_gap.csv").string() << "\n";
    } else if (diag->parsed()) {
      auto spec = base_spec(globals, diag_flags);
      if (diag_alpha) spec.alpha = *diag_alpha;
      spec.validate();
      if (!diag_trend.empty()) {
        const auto kind = diag_trend == "spectral" ? cli::TrendKind::Spectral
                          : diag_trend == "probe"  ? cli::TrendKind::Probe
                                                   : cli::TrendKind::Cov;
        const auto points = cli::trend(kind, diag_grid, spec.config.k, spec.alpha,
                                       globals.replicates, spec.config.seed);
        const std::string csv = cli::trend_csv(points);
        cli::write_text_file(out_dir / ("trend_" + diag_trend + ".csv"), csv);
        std::cout << csv;
      } else {
        emit(cli::diagnose_json(spec, globals.replicates), out_dir / "diagnose.json");
      }
    } else if (exp->parsed()) {
      if (list_presets) {
        for (const auto& p : cli::preset_registry()) {
          std::cout << p.name << "\t" << p.description << "\n";
        }
        return 0;
      }
      cli::RunOptions options;
      options.replicates = globals.replicates;
      options.out_dir = out_dir;
      cli::ExperimentReport report;
      if (!preset.empty()) {
        options.master_seed = globals.seed.value_or(1);
        report = cli::run_preset(preset, options);
      } else {
        require(!globals.config.empty(), ErrorCode::UnknownPreset,
                "give a preset name or --config");
        auto spec = cli::load_spec(globals.config);
        if (globals.seed) spec.config.seed = *globals.seed;
        if (app.get_option("--replicates")->count() == 0) options.replicates = spec.replicates;
        report = cli::run_spec(spec, options);
      }
      std::cout << cli::summary_json(report).dump(2) << "\n";
    } else if (tables->parsed()) {
      cli::RunOptions options;
      options.replicates = globals.replicates;
      options.out_dir = out_dir;
      options.master_seed = globals.seed.value_or(1);
      for (auto which : {cli::TableKind::Table1, cli::TableKind::Table2}) {
        std::cout << cli::table_csv(cli::run_table(which, options)) << "\n";
      }
    }
  } catch (const Error& e) {
    std::cerr << "pprlab: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
