// Copyright 2026 The cqabuse Authors. All Rights Reserved.
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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cqabuse {

//! Immutable simple directed graph over string node ids remapped to dense
//! indices.  Node order is the sorted id order and adjacency lists are sorted,
//! so construction is insensitive to input ordering.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  //! Build from a node id list and directed edges given as id pairs.
  //! Duplicate edges collapse to one; self-loops are dropped.  Edges whose
  //! endpoints are not in `node_ids` raise CorpusError.
  static DirectedGraph build(
      std::vector<std::string> node_ids,
      const std::vector<std::pair<std::string, std::string>>& edges);

  std::size_t num_nodes() const { return ids_.size(); }
  std::size_t num_edges() const { return n_edges_; }

  const std::string& node_id(std::uint32_t i) const { return ids_[i]; }
  std::optional<std::uint32_t> index_of(std::string_view id) const;

  std::span<const std::uint32_t> out(std::uint32_t i) const {
    return {out_[i].data(), out_[i].size()};
  }
  std::span<const std::uint32_t> in(std::uint32_t i) const {
    return {in_[i].data(), in_[i].size()};
  }

  bool has_edge(std::uint32_t u, std::uint32_t v) const;

 private:
  std::vector<std::string> ids_;
  std::map<std::string, std::uint32_t, std::less<>> index_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<std::vector<std::uint32_t>> in_;
  std::size_t n_edges_ = 0;
};

namespace graph {

enum class Direction { in, out };

struct DegreeDistribution {
  Direction direction = Direction::in;
  std::vector<std::uint64_t> degrees;  // per node, graph node order
  //! histogram[d] entries as (degree, node count), ascending by degree.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> histogram;
};

DegreeDistribution degree_distribution(const DirectedGraph& g, Direction dir);

struct PowerLawFit {
  double alpha = 0.0;
  double x_min = 1.0;
  std::size_t n_tail = 0;
};

//! Maximum-likelihood power-law exponent over the degree histogram tail
//! (degrees >= x_min): alpha = 1 + n / sum ln(d_i / (x_min - 0.5)).
//! The half-offset corrects for integer binning; pass half_offset=false to
//! fit raw values against x_min directly (used for continuous samples).
//! Throws AnalysisError when fewer than 2 tail samples exist or when all tail
//! values equal x_min with no offset (zero log-sum).
PowerLawFit fit_power_law(const DegreeDistribution& dist, std::uint64_t x_min,
                          bool half_offset = true);

//! Same estimator over raw (possibly non-integer) samples.
PowerLawFit fit_power_law_samples(std::span<const double> samples, double x_min,
                                  bool half_offset = false);

struct ComponentPartition {
  std::vector<std::uint32_t> label;  // per node, component ids dense from 0
  std::size_t count = 0;
  std::vector<std::size_t> sizes;  // per component id
};

//! Weakly connected components; component ids numbered by the smallest node
//! index they contain (deterministic).
ComponentPartition weakly_connected_components(const DirectedGraph& g);

//! Materialize components as node-index sets, ascending within each set.
std::vector<std::vector<std::uint32_t>> component_node_sets(
    const ComponentPartition& parts);

//! Fraction of directed edges whose reverse edge also exists (r = L / L*).
//! Throws AnalysisError on an edgeless graph.
double reciprocity(const DirectedGraph& g);
double reciprocity_serial(const DirectedGraph& g);

enum class ClusteringMode { reciprocated };

//! Local clustering coefficient per node on the undirected graph induced by
//! reciprocated edge pairs; nodes with fewer than two mutual neighbors get 0.
std::vector<double> local_clustering(
    const DirectedGraph& g, ClusteringMode mode = ClusteringMode::reciprocated);
std::vector<double> local_clustering_serial(
    const DirectedGraph& g, ClusteringMode mode = ClusteringMode::reciprocated);

enum class Orientation { forward, reverse };

//! Bounded-depth BFS hop distances from `source`; -1 marks nodes beyond
//! `max_depth` or unreachable.  `reverse` walks edges backwards, so from a
//! followee it reaches its h-hop followers.  Throws AnalysisError when source
//! is out of range.
std::vector<std::int32_t> bfs_distances(const DirectedGraph& g,
                                        std::uint32_t source,
                                        std::int32_t max_depth,
                                        Orientation orientation);

}  // namespace graph
}  // namespace cqabuse
