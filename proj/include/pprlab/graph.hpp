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

#ifndef PPRLAB_GRAPH_HPP_
#define PPRLAB_GRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace pprlab {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Sorted list of distinct node ids.
class NodeSet {
 public:
  NodeSet() = default;

  /// Sorts and deduplicates `ids`.
  static NodeSet from_ids(std::vector<NodeId> ids);
  /// The contiguous range {first, ..., last - 1}.
  static NodeSet range(NodeId first, NodeId last);

  std::span<const NodeId> ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(NodeId v) const;
  /// Throws InvalidArgument unless every id is below n.
  void validate(std::size_t n) const;

  /// Nodes of {0..n-1} not in this set.
  NodeSet complement(std::size_t n) const;
  /// Number of ids shared with `other`.
  std::size_t intersection_size(const NodeSet& other) const;

  bool operator==(const NodeSet&) const = default;

 private:
  std::vector<NodeId> ids_;
};

/// Parameters of an Erdos-Renyi graph G(n, p) carrying a denser G(m, q) on
/// the nodes {0..m-1} (the community). Seeds are the nodes {0..k-1}.
struct PlantedGraphConfig {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  double p = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument unless 1 <= k <= m <= n and 0 <= p <= q <= 1.
  void validate() const;

  NodeSet community() const { return NodeSet::range(0, static_cast<NodeId>(m)); }
  NodeSet seeds() const { return NodeSet::range(0, static_cast<NodeId>(k)); }
  bool in_community(NodeId v) const { return v < m; }

  /// The same model with the seed of replica `index` (see derive_seed).
  PlantedGraphConfig replica(std::uint64_t index) const;

  /// The moderately sparse setting p = 5 ln^2(n) / n, q = 2p. The logarithm
  /// is natural; with n = 10^4 this gives a background degree near 424.
  static PlantedGraphConfig log_squared(std::size_t n, std::size_t m, std::size_t k,
                                        std::uint64_t seed);

  bool operator==(const PlantedGraphConfig&) const = default;
};

/// Immutable undirected simple graph in compressed adjacency form. Both
/// directions of every edge are stored and each neighbor list is strictly
/// increasing.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from undirected edges. Self-loops are rejected;
  /// duplicate edges (in either orientation) are collapsed.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_nodes() const { return degrees_.size(); }
  std::uint64_t num_edges() const { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(NodeId v) const { return degrees_[v]; }
  std::span<const std::uint32_t> degrees() const { return degrees_; }

  /// Sum of all degrees, 2|E|.
  std::uint64_t total_volume() const { return targets_.size(); }

  bool has_edge(NodeId u, NodeId v) const;

  /// Exhaustive check of symmetry, ordering, loop-freeness and degree
  /// consistency. O(|E| log d).
  bool check_invariants() const;

  /// Each undirected edge once, as (i, j) with i < j, in lexicographic order.
  std::vector<Edge> edge_list() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::uint64_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<std::uint32_t> degrees_;
};

/// Samples the planted model. Pairs inside the community are edges with
/// probability q, all other pairs with probability p. Each block is walked
/// by geometric skipping over pair indices, so the expected cost is linear
/// in the number of edges. The same config always gives the same graph.
Graph sample_planted_er(const PlantedGraphConfig& config);

/// Sum of degrees over `set`.
std::uint64_t volume(const Graph& graph, const NodeSet& set);

/// Number of edges with exactly one endpoint in `set`.
std::uint64_t cut_size(const Graph& graph, const NodeSet& set);

/// cut_size / min(vol(set), vol(complement)). Throws ZeroVolume when either
/// side has zero volume.
double conductance(const Graph& graph, const NodeSet& set);

/// Edge-list text format: "# n=<n>" then one "i j" line per edge, i < j.
void write_edge_list(std::ostream& out, const Graph& graph);
Graph read_edge_list(std::istream& in);

}  // namespace pprlab

#endif  // PPRLAB_GRAPH_HPP_
