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

#include "pprlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pprlab/error.hpp"
#include "pprlab/rng.hpp"

namespace pprlab {

// ---------------------------------------------------------------- NodeSet

NodeSet NodeSet::from_ids(std::vector<NodeId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  NodeSet set;
  set.ids_ = std::move(ids);
  return set;
}

NodeSet NodeSet::range(NodeId first, NodeId last) {
  NodeSet set;
  if (last > first) {
    set.ids_.resize(last - first);
    for (NodeId i = first; i < last; ++i) set.ids_[i - first] = i;
  }
  return set;
}

bool NodeSet::contains(NodeId v) const {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

void NodeSet::validate(std::size_t n) const {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    require(ids_[i] < n, ErrorCode::InvalidArgument, "node id out of range");
    require(i == 0 || ids_[i - 1] < ids_[i], ErrorCode::InvalidArgument,
            "node set not sorted or has duplicates");
  }
}

NodeSet NodeSet::complement(std::size_t n) const {
  NodeSet out;
  out.ids_.reserve(n - std::min(n, ids_.size()));
  std::size_t j = 0;
  for (NodeId v = 0; v < n; ++v) {
    while (j < ids_.size() && ids_[j] < v) ++j;
    if (j < ids_.size() && ids_[j] == v) continue;
    out.ids_.push_back(v);
  }
  return out;
}

std::size_t NodeSet::intersection_size(const NodeSet& other) const {
  std::size_t count = 0;
  auto a = ids_.begin();
  auto b = other.ids_.begin();
  while (a != ids_.end() && b != other.ids_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

// ------------------------------------------------------ PlantedGraphConfig

void PlantedGraphConfig::validate() const {
  require(k >= 1 && k <= m && m <= n, ErrorCode::InvalidArgument,
          "planted config requires 1 <= k <= m <= n");
  require(n <= 0xFFFFFFFFu, ErrorCode::InvalidArgument, "n exceeds 32-bit node ids");
  require(p >= 0.0 && p <= q && q <= 1.0, ErrorCode::InvalidArgument,
          "planted config requires 0 <= p <= q <= 1");
}

PlantedGraphConfig PlantedGraphConfig::replica(std::uint64_t index) const {
  PlantedGraphConfig out = *this;
  out.seed = derive_seed(seed, index);
  return out;
}

PlantedGraphConfig PlantedGraphConfig::log_squared(std::size_t n, std::size_t m, std::size_t k,
                                                   std::uint64_t seed) {
  const double ln_n = std::log(static_cast<double>(n));
  PlantedGraphConfig config;
  config.n = n;
  config.m = m;
  config.k = k;
  config.p = std::min(1.0, 5.0 * ln_n * ln_n / static_cast<double>(n));
  config.q = std::min(1.0, 2.0 * config.p);
  config.seed = seed;
  return config;
}

// ------------------------------------------------------------------ Graph

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  require(n <= 0xFFFFFFFFu, ErrorCode::InvalidArgument, "n exceeds 32-bit node ids");
  std::vector<std::uint64_t> counts(n + 1, 0);
  for (const auto& [u, v] : edges) {
    require(u < n && v < n, ErrorCode::InvalidArgument, "edge endpoint out of range");
    require(u != v, ErrorCode::InvalidArgument, "self-loop");
    ++counts[u + 1];
    ++counts[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) counts[i + 1] += counts[i];

  std::vector<NodeId> raw(counts[n]);
  std::vector<std::uint64_t> cursor(counts.begin(), counts.end() - 1);
  for (const auto& [u, v] : edges) {
    raw[cursor[u]++] = v;
    raw[cursor[v]++] = u;
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  g.degrees_.assign(n, 0);
  g.targets_.reserve(raw.size());
  for (std::size_t v = 0; v < n; ++v) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(counts[v]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(counts[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    g.targets_.insert(g.targets_.end(), first, last);
    g.offsets_[v + 1] = g.targets_.size();
    g.degrees_[v] = static_cast<std::uint32_t>(last - first);
  }
  g.targets_.shrink_to_fit();
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

bool Graph::check_invariants() const {
  const std::size_t n = num_nodes();
  if (offsets_.size() != n + 1 || offsets_.back() != targets_.size()) return false;
  for (NodeId v = 0; v < n; ++v) {
    auto nbrs = neighbors(v);
    if (nbrs.size() != degrees_[v]) return false;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] >= n || nbrs[i] == v) return false;
      if (i > 0 && nbrs[i - 1] >= nbrs[i]) return false;
      if (!has_edge(nbrs[i], v)) return false;
    }
  }
  return true;
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

// --------------------------------------------------------------- sampling

namespace {

// Batagelj-Brandes walk over the pairs (w, v) with v in [v_begin, v_end) and
// w < v, each kept with probability `prob`.
void walk_lower_triangle(Rng& rng, NodeId v_begin, NodeId v_end, double prob,
                         std::vector<Edge>& out) {
  if (prob <= 0.0 || v_end <= v_begin) return;
  const bool every_pair = prob >= 1.0;
  const double log_complement = every_pair ? 0.0 : std::log1p(-prob);
  std::int64_t v = v_begin;
  std::int64_t w = -1;
  while (v < v_end) {
    std::uint64_t skip = every_pair ? 0 : rng.geometric_skip(log_complement);
    if (skip > (std::uint64_t{1} << 62)) break;
    w += 1 + static_cast<std::int64_t>(skip);
    while (w >= v && v < v_end) {
      w -= v;
      ++v;
    }
    if (v < v_end) out.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
}

}  // namespace

Graph sample_planted_er(const PlantedGraphConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const auto n = static_cast<NodeId>(config.n);
  const auto m = static_cast<NodeId>(config.m);

  const double expected = 0.5 * static_cast<double>(m) * (m - 1.0) * config.q +
                          (0.5 * static_cast<double>(n) * (n - 1.0) -
                           0.5 * static_cast<double>(m) * (m - 1.0)) * config.p;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(expected * 1.02 + 64));

  // Community block at rate q, then every pair with a non-community
  // endpoint (v >= m) at rate p.
  walk_lower_triangle(rng, 0, m, config.q, edges);
  walk_lower_triangle(rng, m, n, config.p, edges);
  return Graph::from_edges(config.n, edges);
}

// ------------------------------------------------------------ cut / volume

std::uint64_t volume(const Graph& graph, const NodeSet& set) {
  std::uint64_t total = 0;
  for (NodeId v : set.ids()) total += graph.degree(v);
  return total;
}

std::uint64_t cut_size(const Graph& graph, const NodeSet& set) {
  std::vector<char> member(graph.num_nodes(), 0);
  for (NodeId v : set.ids()) member[v] = 1;
  std::uint64_t cut = 0;
  for (NodeId v : set.ids()) {
    for (NodeId u : graph.neighbors(v)) cut += member[u] ? 0 : 1;
  }
  return cut;
}

double conductance(const Graph& graph, const NodeSet& set) {
  set.validate(graph.num_nodes());
  const std::uint64_t vol = volume(graph, set);
  const std::uint64_t rest = graph.total_volume() - vol;
  require(vol > 0 && rest > 0, ErrorCode::ZeroVolume, "conductance of a zero-volume side");
  return static_cast<double>(cut_size(graph, set)) / static_cast<double>(std::min(vol, rest));
}

// --------------------------------------------------------------- edge list

void write_edge_list(std::ostream& out, const Graph& graph) {
  out << "# n=" << graph.num_nodes() << '\n';
  for (const auto& [u, v] : graph.edge_list()) out << u << ' ' << v << '\n';
  if (!out) throw Error(ErrorCode::IoError, "failed writing edge list");
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::IoError,
          "edge list is empty");
  require(line.rfind("# n=", 0) == 0, ErrorCode::IoError, "edge list header must be '# n=<n>'");
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoull(line.substr(4), &used);
    require(used == line.size() - 4, ErrorCode::IoError, "bad node count in header");
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::IoError, "bad node count in header");
  }

  std::vector<Edge> edges;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    long long u = -1;
    long long v = -1;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra) || u < 0 || v < 0 || u >= v ||
        static_cast<std::size_t>(v) >= n) {
      throw Error(ErrorCode::IoError, "malformed edge on line " + std::to_string(line_no));
    }
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return Graph::from_edges(n, edges);
}

}  // namespace pprlab
