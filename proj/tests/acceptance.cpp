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


// Acceptance harness: one verdict line per criterion.
//
//   acceptance                  run every criterion
//   acceptance --criterion N    run criterion N only
//
// Exit status is 0 only if every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pprlab/appr.hpp"
#include "pprlab/cli/experiments.hpp"
#include "pprlab/diagnostics.hpp"
#include "pprlab/error.hpp"
#include "pprlab/mean_field.hpp"
#include "pprlab/ppr.hpp"
#include "pprlab/rng.hpp"

using namespace pprlab;
using namespace pprlab::cli;

namespace {

// ---------------------------------------------------------------- tolerances

constexpr double kOracleLinf = 1e-9;
constexpr double kMeanFieldRel = 1e-10;
constexpr double kMeanFieldInvariant = 1e-12;
constexpr double kAlphaGridStep = 1e-5;
constexpr double kAlphaOptTol = 1e-4;
constexpr double kMassTol = 1e-9;
constexpr double kExactTol = 1e-15;
constexpr double kSpectralBand = 2.0;
constexpr double kCovFloor = 0.1;

struct Target {
  const char* metric;
  double value;
  double tol;
};

constexpr Target kFigureTargets[] = {{"fig1", 0.036, 0.03}, {"fig2", 0.442, 0.10},
                                     {"fig3", 0.345, 0.10}};
constexpr Target kTable1[] = {{"ppr_error", 0.35, 0.08},
                              {"appr_error_unscaled", 0.49, 0.10},
                              {"appr_error_scaled", 0.72, 0.08}};
constexpr Target kTable2[] = {{"ppr_error", 0.044, 0.03},
                              {"appr_error_unscaled", 0.069, 0.04},
                              {"appr_error_scaled", 0.72, 0.08}};
constexpr Target kCommunityConductance = {"conductance(C)", 0.66, 0.02};
constexpr double kSweepBestMax = 0.01;
constexpr Target kSweepSize = {"best_size", 4686, 800};
constexpr Target kTruncated = {"truncated_conductance", 0.68, 0.03};
constexpr Target kDegreeRank = {"degree_error", 0.935, 0.05};
constexpr Target kSmallPpr = {"ppr_error", 0.77, 0.08};

// Runtime budgets in seconds; 0 means unbounded.
constexpr double kBudget[] = {0, 10, 1, 5, 300, 900, 600, 30, 180, 1200, 0};

constexpr std::size_t kReplicates = 10;

// -------------------------------------------------------------------- output

struct Outcome {
  bool pass = true;
  std::string summary;
};

void info(const std::string& line) { std::printf("    %s\n", line.c_str()); }

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Checks |value - target| <= tol and logs it.
bool within(const Target& t, double value, std::string prefix = "") {
  const bool ok = std::abs(value - t.value) <= t.tol;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s%s = %.4f (target %.4g +- %.3g) %s", prefix.c_str(),
                t.metric, value, t.value, t.tol, ok ? "ok" : "MISS");
  info(buf);
  return ok;
}

// ---------------------------------------------------------- shared instances

struct Instance {
  PlantedGraphConfig config;
  Graph graph;
};

// 50 planted graphs with n in [20, 200]; redrawn until every seed has an
// edge, so both the dense oracle and the push are well defined.
std::vector<Instance> small_instances() {
  std::vector<Instance> out;
  Rng rng(0xacce97);
  while (out.size() < 50) {
    PlantedGraphConfig c;
    c.n = 20 + rng.uniform_below(181);
    c.m = 2 + rng.uniform_below(c.n - 2);
    c.k = 1 + rng.uniform_below(c.m);
    c.p = 0.05 + 0.25 * rng.uniform01();
    c.q = std::min(1.0, c.p * (1.0 + 3.0 * rng.uniform01()));
    c.seed = rng.next_u64();
    Graph g = sample_planted_er(c);
    bool ok = true;
    for (NodeId s = 0; s < c.k; ++s) ok = ok && g.degree(s) > 0;
    if (ok) out.push_back({c, std::move(g)});
  }
  return out;
}

constexpr double kAlphas[] = {0.1, 0.5, 0.85, 0.99};

// ------------------------------------------------------------------ criteria

Outcome oracle_equivalence() {
  double worst = 0.0;
  for (const auto& inst : small_instances()) {
    const auto nu = restart_vector(inst.config);
    for (double a : kAlphas) {
      const auto it = ppr_iterate(inst.graph, nu, a);
      const auto lu = ppr_dense_oracle(inst.graph, nu, a);
      for (NodeId v = 0; v < it.size(); ++v) worst = std::max(worst, std::abs(it[v] - lu[v]));
    }
  }
  return {worst <= kOracleLinf, fmt("max Linf over 200 solves = %.3g", worst)};
}

Outcome mean_field_identities() {
  Rng rng(0x3f1e1d);
  double worst_rel = 0.0, worst_norm = 0.0, worst_eq = 0.0;
  for (int i = 0; i < 1000; ++i) {
    PlantedGraphConfig c;
    c.n = 10 + rng.uniform_below(100000);
    c.m = 2 + rng.uniform_below(c.n - 2);
    c.k = 1 + rng.uniform_below(c.m - 1);
    c.p = 1e-4 + 0.5 * rng.uniform01();
    c.q = std::min(1.0, c.p * (1.0 + 9.0 * rng.uniform01()));
    const double a = 0.999 * rng.uniform01();
    const auto closed = mean_field_ppr(c, a);
    const auto solved = mean_field_solve_3x3(c, a);
    for (auto [x, y] : {std::pair{closed.pi0, solved.pi0}, std::pair{closed.pi1, solved.pi1},
                        std::pair{closed.pi2, solved.pi2}}) {
      worst_rel = std::max(worst_rel, std::abs(x - y) / std::abs(y));
    }
    worst_norm = std::max(worst_norm, std::abs(closed.total_mass() - 1.0));
    // pi0 - pi1 = (1 - alpha) / k
    worst_eq = std::max(worst_eq, std::abs(closed.pi0 - closed.pi1 - (1.0 - a) / c.k) * c.k);
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "rel %.3g, normalization %.3g, seed identity %.3g", worst_rel,
                worst_norm, worst_eq);
  return {worst_rel <= kMeanFieldRel && worst_norm <= kMeanFieldInvariant &&
              worst_eq <= kMeanFieldInvariant,
          buf};
}

Outcome optimal_alpha_grid() {
  Rng rng(0xa1fa);
  double worst = 0.0;
  int clamped = 0;
  for (int i = 0; i < 200; ++i) {
    ModelShape s;
    s.rho = 1.0 + 9.0 * (1.0 - rng.uniform01());  // (1, 10]
    s.beta = 0.05 + 0.9 * rng.uniform01();
    const auto opt = optimal_alpha(s);
    clamped += opt.clamped;
    double best = -1.0, arg = 0.0;
    const int steps = static_cast<int>(std::lround(1.0 / kAlphaGridStep));
    for (int j = 0; j <= steps; ++j) {
      const double a = j * kAlphaGridStep;
      const double g = mf_gap(s, 1000.0, a);
      if (g > best) {
        best = g;
        arg = a;
      }
    }
    worst = std::max(worst, std::abs(arg - opt.alpha));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "max |closed form - grid argmax| = %.3g (%d clamped at 1)", worst,
                clamped);
  return {worst <= kAlphaOptTol, buf};
}

Outcome figure_errors() {
  bool ok = true;
  std::string s;
  for (const auto& t : kFigureTargets) {
    RunOptions o;
    o.replicates = kReplicates;
    const auto r = run_preset(t.metric, o);
    const auto agg = r.aggregate("error");
    ok = within({t.metric, t.value, t.tol}, agg.mean) && ok;
    info(fmt("  stderr %.4f", agg.se));
    s += std::string(t.metric) + fmt("=%.4f ", agg.mean);
  }
  return {ok, "mean error " + s};
}

Outcome table_errors() {
  bool ok = true;
  std::string s;
  for (auto kind : {TableKind::Table1, TableKind::Table2}) {
    RunOptions o;
    o.replicates = kReplicates;
    const auto r = run_table(kind, o);
    const auto& targets = kind == TableKind::Table1 ? kTable1 : kTable2;
    const std::string name = kind == TableKind::Table1 ? "table1 " : "table2 ";
    for (const auto& t : targets) {
      const double v = r.mean(t.metric);
      ok = within(t, v, name) && ok;
      s += fmt("%.3f ", v);
    }
    info(name + fmt("mean pushes %.0f", r.mean("pushes")));
  }
  return {ok, "table1/table2 means " + s};
}

Outcome conductance_suite() {
  bool ok = true;
  const double formula = mean_conductance_community(0.2, 2.0);
  const bool exact = std::abs(formula - 2.0 / 3.0) <= kExactTol;
  info(fmt("mean-field conductance(kappa=0.2, rho=2) = %.17g", formula) +
       (exact ? " ok" : " MISS"));
  ok = ok && exact;

  const auto base = PlantedGraphConfig::log_squared(10000, 2000, 20, 1);
  std::vector<double> phis;
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto cfg = base.replica(r);
    phis.push_back(conductance(sample_planted_er(cfg), cfg.community()));
  }
  ok = within(kCommunityConductance, sample_mean(phis)) && ok;

  RunOptions o;
  o.replicates = kReplicates;
  const auto sw = run_conductance_sweep(o);
  const double best = sw.mean("best_conductance");
  const bool small = best <= kSweepBestMax;
  info(fmt("sweep best conductance = %.4f", best) + fmt(" (target <= %.3g) ", kSweepBestMax) +
       (small ? "ok" : "MISS"));
  ok = small && ok;
  ok = within(kSweepSize, sw.mean("best_size")) && ok;
  ok = within(kTruncated, sw.mean("truncated_conductance")) && ok;
  info(fmt("top-m PPR set conductance = %.4f", sw.mean("ppr_conductance")));
  return {ok, fmt("sweep best %.4f", best) + fmt(", size %.0f", sw.mean("best_size")) +
                  fmt(", truncated %.4f", sw.mean("truncated_conductance")) +
                  fmt(", conductance(C) %.4f", sample_mean(phis))};
}

Outcome appr_invariants() {
  double worst_mass = 0.0;
  double worst_residual = 0.0;  // max r(v) / (eps d(v)); must stay below 1
  double worst_low = 0.0;       // most negative pi - p
  double worst_high = 0.0;      // max (pi - p) / (eps d)
  std::size_t runs = 0;
  for (const auto& inst : small_instances()) {
    const auto nu = restart_vector(inst.config);
    for (double a : kAlphas) {
      const auto pi = ppr_dense_oracle(inst.graph, nu, a);
      for (double eps : {1e-3, 1e-5}) {
        ApprOptions opts;
        opts.on_push = [&](const ApprResult& r) {
          worst_mass = std::max(worst_mass, std::abs(r.score_mass() + r.residual_mass() - 1.0));
        };
        const auto res = appr_push(inst.graph, nu, a, eps, opts);
        ++runs;
        for (NodeId v = 0; v < inst.graph.num_nodes(); ++v) {
          const double d = inst.graph.degree(v);
          const double gap = pi[v] - res.p.get(v);
          if (d > 0) {
            worst_residual = std::max(worst_residual, res.r.get(v) / (eps * d));
            worst_high = std::max(worst_high, gap / (eps * d));
          } else if (res.r.get(v) > 0.0 || gap > 0.0) {
            worst_residual = worst_high = 1e300;
          }
          worst_low = std::min(worst_low, gap);
        }
      }
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%zu runs: max r/(eps d) = %.6f, min pi-p = %.3g, max (pi-p)/(eps d) = %.4f, "
                "mass drift %.3g",
                runs, worst_residual, worst_low, worst_high, worst_mass);
  // The oracle carries ~1e-15 rounding, hence the small slack on the sandwich.
  return {worst_residual < 1.0 && worst_low >= -1e-12 && worst_high <= 1.0 + 1e-9 &&
              worst_mass <= kMassTol,
          buf};
}

Outcome small_community() {
  RunOptions o;
  o.replicates = kReplicates;
  const auto r = run_small_community(o);
  bool ok = within(kDegreeRank, r.mean("degree_error"));
  ok = within(kSmallPpr, r.mean("ppr_error")) && ok;
  const double baseline = r.mean("baseline");
  const bool exact = baseline == 0.98;
  info(fmt("baseline = %.17g", baseline) + (exact ? " ok" : " MISS"));
  return {ok && exact, fmt("degree %.4f", r.mean("degree_error")) +
                           fmt(", ppr %.4f", r.mean("ppr_error")) + fmt(", baseline %.4g", baseline)};
}

Outcome properties() {
  bool ok = true;
  std::string s;

  // (a) normalized spectral deviation stays in a 2x band.
  {
    const std::vector<std::size_t> grid = {500, 1000, 2000, 4000};
    const auto pts = trend(TrendKind::Spectral, grid, 20, 0.8, 10, 1);
    double lo = 1e300, hi = 0.0;
    for (const auto& p : pts) {
      info(fmt("(a) n=%.0f", p.n) + fmt(" normalized deviation %.4f", p.value) +
           fmt(" +- %.4f", p.se));
      lo = std::min(lo, p.value);
      hi = std::max(hi, p.value);
    }
    const bool a = hi / lo <= kSpectralBand;
    info(fmt("(a) max/min = %.3f", hi / lo) + (a ? " ok" : " MISS"));
    ok = ok && a;
    s += fmt("(a) band %.2f; ", hi / lo);
  }

  // (b) the probe frequency does not grow with k, at two thresholds.
  {
    const double scales[] = {1.0, 0.1};
    std::vector<std::vector<double>> freq(2);
    for (std::size_t k : {20u, 200u, 2000u}) {
      const auto cfg = PlantedGraphConfig::log_squared(10000, 2000, k, 7);
      const auto mf = mean_field_ppr(cfg, 0.8);
      double total[2] = {0.0, 0.0};
      constexpr std::size_t kProbeReplicates = 50;
      for (std::size_t r = 0; r < kProbeReplicates; ++r) {
        const auto pi = ppr_iterate(sample_planted_er(cfg.replica(r)), restart_vector(cfg), 0.8);
        for (int j = 0; j < 2; ++j) total[j] += concentration_frequency(pi.values, mf, scales[j]);
      }
      for (int j = 0; j < 2; ++j) freq[j].push_back(total[j] / kProbeReplicates);
    }
    bool b = true;
    for (int j = 0; j < 2; ++j) {
      b = b && freq[j][1] <= freq[j][0] && freq[j][2] <= freq[j][1];
      info(fmt("(b) eps_scale=%.1f:", scales[j]) + fmt(" k=20 %.4f", freq[j][0]) +
           fmt(", k=200 %.4f", freq[j][1]) + fmt(", k=2000 %.4f", freq[j][2]));
    }
    info(std::string("(b) nonincreasing in k: ") + (b ? "ok" : "MISS"));
    ok = ok && b;
    s += std::string("(b) ") + (b ? "monotone; " : "not monotone; ");
  }

  // (c) Var/E^2 at a fixed node: stays above 0.1 without decay for two
  // seeds, decays for 200.
  {
    constexpr std::size_t kCovReplicates = 60;
    const std::size_t grid[] = {2000, 5000, 10000};
    bool low_ok = true, high_ok = true;
    for (std::size_t k : {2u, 200u}) {
      std::vector<SampleSummary> inside;
      for (std::size_t n : grid) {
        const auto cfg = PlantedGraphConfig::log_squared(n, n / 5, k, 3);
        const NodeId a = representative_node(cfg, NodeClass::InCommunityNonSeed);
        const NodeId b = representative_node(cfg, NodeClass::OutsideCommunity);
        std::vector<double> xa, xb;
        for (std::size_t r = 0; r < kCovReplicates; ++r) {
          const auto pi =
              ppr_iterate(sample_planted_er(cfg.replica(r)), restart_vector(cfg), 0.8);
          xa.push_back(pi[a]);
          xb.push_back(pi[b]);
        }
        const auto in = cov_from_samples(NodeClass::InCommunityNonSeed, a, xa).summary;
        const auto out = cov_from_samples(NodeClass::OutsideCommunity, b, xb).summary;
        inside.push_back(in);
        info(fmt("(c) k=%.0f", static_cast<double>(k)) + fmt(" n=%.0f", static_cast<double>(n)) +
             fmt(": Var/E^2 in C\\S %.4f", in.cov2) + fmt(" +- %.4f", in.cov2_se) +
             fmt(", outside C %.4f", out.cov2) + fmt(" +- %.4f", out.cov2_se));
      }
      const auto& first = inside.front();
      const auto& last = inside.back();
      const double se_diff = std::hypot(first.cov2_se, last.cov2_se);
      if (k == 2) {
        bool floor = true;
        for (const auto& x : inside) floor = floor && x.cov2 > kCovFloor;
        const bool no_decay = last.cov2 >= first.cov2 - 2.0 * se_diff;
        low_ok = floor && no_decay;
        info(std::string("(c) k=2 above floor at every n: ") + (floor ? "ok" : "MISS") +
             ", no decay: " + (no_decay ? "ok" : "MISS"));
      } else {
        high_ok = last.cov2 < first.cov2 - 2.0 * se_diff;
        info(std::string("(c) k=200 decays with n: ") + (high_ok ? "ok" : "MISS"));
      }
    }
    ok = ok && low_ok && high_ok;
    s += std::string("(c) k=2 ") + (low_ok ? "ok" : "fails") + ", k=200 " +
         (high_ok ? "ok" : "fails");
  }
  return {ok, s};
}

std::map<std::string, std::string> read_tree(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto rel = std::filesystem::relative(e.path(), dir).string();
    if (rel.ends_with("_timing.csv")) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    out[rel] = ss.str();
  }
  return out;
}

Outcome determinism() {
  const auto root = std::filesystem::temp_directory_path() / "pprlab_acceptance_determinism";
  std::filesystem::remove_all(root);
  std::vector<std::map<std::string, std::string>> trees;
  for (int pass = 0; pass < 2; ++pass) {
    const auto dir = root / std::to_string(pass);
    for (const auto& p : preset_registry()) {
      RunOptions o;
      o.replicates = 2;
      o.master_seed = 1;
      o.out_dir = dir;
      run_preset(p.name, o);
    }
    trees.push_back(read_tree(dir));
  }
  std::size_t differing = 0;
  for (const auto& [name, content] : trees[0]) {
    const auto it = trees[1].find(name);
    if (it == trees[1].end() || it->second != content) {
      ++differing;
      info("differs: " + name);
    }
  }
  const bool same_set = trees[0].size() == trees[1].size();
  std::filesystem::remove_all(root);
  return {differing == 0 && same_set && !trees[0].empty(),
          std::to_string(trees[0].size()) + " output files compared across " +
              std::to_string(preset_registry().size()) + " presets, " +
              std::to_string(differing) + " differ"};
}

const std::function<Outcome()> kCriteria[] = {
    oracle_equivalence, mean_field_identities, optimal_alpha_grid, figure_errors,
    table_errors,       conductance_suite,     appr_invariants,    small_community,
    properties,         determinism,
};

bool run_criterion(int n) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = kCriteria[n - 1]();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double budget = kBudget[n];
  const bool in_time = budget == 0 || secs <= budget;
  if (!in_time) o.summary += fmt(" [over the %.0f s budget]", budget);
  const bool pass = o.pass && in_time;
  std::printf("[%s] criterion %d: %s (%.1f s)\n", pass ? "PASS" : "FAIL", n, o.summary.c_str(),
              secs);
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pprlab acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  for (int n = 1; n <= 10; ++n) {
    if (only != 0 && n != only) continue;
    all = run_criterion(n) && all;
  }
  return all ? 0 : 1;
}
