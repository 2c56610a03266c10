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

#include "cqabuse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "cqabuse/errors.hpp"

namespace cqabuse {

DirectedGraph DirectedGraph::build(
    std::vector<std::string> node_ids,
    const std::vector<std::pair<std::string, std::string>>& edges) {
  DirectedGraph g;
  std::sort(node_ids.begin(), node_ids.end());
  node_ids.erase(std::unique(node_ids.begin(), node_ids.end()), node_ids.end());
  g.ids_ = std::move(node_ids);
  for (std::uint32_t i = 0; i < g.ids_.size(); ++i) g.index_[g.ids_[i]] = i;

  const std::size_t n = g.ids_.size();
  g.out_.assign(n, {});
  g.in_.assign(n, {});
  for (const auto& [from, to] : edges) {
    auto fi = g.index_.find(from);
    auto ti = g.index_.find(to);
    if (fi == g.index_.end()) throw CorpusError("graph edge references unknown node '" + from + "'");
    if (ti == g.index_.end()) throw CorpusError("graph edge references unknown node '" + to + "'");
    if (fi->second == ti->second) continue;  // self-loops dropped
    g.out_[fi->second].push_back(ti->second);
  }
  for (std::size_t u = 0; u < n; ++u) {
    auto& adj = g.out_[u];
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    g.n_edges_ += adj.size();
    for (std::uint32_t v : adj) g.in_[v].push_back(static_cast<std::uint32_t>(u));
  }
  // in-lists are filled in ascending source order, hence already sorted
  return g;
}

std::optional<std::uint32_t> DirectedGraph::index_of(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool DirectedGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
  const auto& adj = out_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

namespace graph {

DegreeDistribution degree_distribution(const DirectedGraph& g, Direction dir) {
  DegreeDistribution dd;
  dd.direction = dir;
  const std::size_t n = g.num_nodes();
  dd.degrees.resize(n);
  for (std::uint32_t i = 0; i < n; ++i)
    dd.degrees[i] = dir == Direction::out ? g.out(i).size() : g.in(i).size();

  std::vector<std::uint64_t> sorted = dd.degrees;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    dd.histogram.emplace_back(sorted[i], j - i);
    i = j;
  }
  return dd;
}

namespace {

PowerLawFit fit_tail(const std::vector<std::pair<double, std::uint64_t>>& tail,
                     double x_min, bool half_offset) {
  std::size_t n = 0;
  double log_sum = 0.0;
  const double ref = half_offset ? x_min - 0.5 : x_min;
  if (ref <= 0.0) throw AnalysisError("power-law fit: x_min too small for offset");
  for (const auto& [value, count] : tail) {
    n += count;
    log_sum += static_cast<double>(count) * std::log(value / ref);
  }
  if (n < 2) throw AnalysisError("power-law fit: fewer than 2 samples at or above x_min");
  if (log_sum <= 0.0)
    throw AnalysisError("power-law fit: no variation above x_min (degenerate tail)");
  PowerLawFit fit;
  fit.alpha = 1.0 + static_cast<double>(n) / log_sum;
  fit.x_min = x_min;
  fit.n_tail = n;
  return fit;
}

}  // namespace

PowerLawFit fit_power_law(const DegreeDistribution& dist, std::uint64_t x_min,
                          bool half_offset) {
  if (x_min == 0) throw AnalysisError("power-law fit: x_min must be positive");
  std::vector<std::pair<double, std::uint64_t>> tail;
  for (const auto& [deg, count] : dist.histogram)
    if (deg >= x_min) tail.emplace_back(static_cast<double>(deg), count);
  return fit_tail(tail, static_cast<double>(x_min), half_offset);
}

PowerLawFit fit_power_law_samples(std::span<const double> samples, double x_min,
                                  bool half_offset) {
  if (x_min <= 0.0) throw AnalysisError("power-law fit: x_min must be positive");
  std::vector<std::pair<double, std::uint64_t>> tail;
  tail.reserve(samples.size());
  for (double v : samples)
    if (v >= x_min) tail.emplace_back(v, 1);
  return fit_tail(tail, x_min, half_offset);
}

ComponentPartition weakly_connected_components(const DirectedGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);

  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v : g.out(u)) {
      std::uint32_t ru = find(u), rv = find(v);
      if (ru != rv) parent[std::max(ru, rv)] = std::min(ru, rv);
    }

  ComponentPartition parts;
  parts.label.assign(n, 0);
  std::vector<std::uint32_t> remap(n, UINT32_MAX);
  for (std::uint32_t u = 0; u < n; ++u) {
    const std::uint32_t root = find(u);
    if (remap[root] == UINT32_MAX) {
      remap[root] = static_cast<std::uint32_t>(parts.count++);
      parts.sizes.push_back(0);
    }
    parts.label[u] = remap[root];
    ++parts.sizes[parts.label[u]];
  }
  return parts;
}

std::vector<std::vector<std::uint32_t>> component_node_sets(
    const ComponentPartition& parts) {
  std::vector<std::vector<std::uint32_t>> sets(parts.count);
  for (std::uint32_t u = 0; u < parts.label.size(); ++u)
    sets[parts.label[u]].push_back(u);
  return sets;
}

namespace {

std::size_t count_mutual(const DirectedGraph& g, std::uint32_t u) {
  // |out(u) ∩ in(u)| = number of reciprocated edges leaving u.
  auto a = g.out(u);
  auto b = g.in(u);
  std::size_t i = 0, j = 0, hits = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else { ++hits; ++i; ++j; }
  }
  return hits;
}

std::vector<std::uint32_t> mutual_neighbors(const DirectedGraph& g, std::uint32_t u) {
  auto a = g.out(u);
  auto b = g.in(u);
  std::vector<std::uint32_t> m;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else { m.push_back(a[i]); ++i; ++j; }
  }
  return m;
}

}  // namespace

double reciprocity_serial(const DirectedGraph& g) {
  if (g.num_edges() == 0) throw AnalysisError("reciprocity: graph has no edges");
  std::size_t mutual = 0;
  for (std::uint32_t u = 0; u < g.num_nodes(); ++u) mutual += count_mutual(g, u);
  return static_cast<double>(mutual) / static_cast<double>(g.num_edges());
}

double reciprocity(const DirectedGraph& g) {
  if (g.num_edges() == 0) throw AnalysisError("reciprocity: graph has no edges");
  const long long n = static_cast<long long>(g.num_nodes());
  std::size_t mutual = 0;
#pragma omp parallel for schedule(static) reduction(+ : mutual)
  for (long long u = 0; u < n; ++u)
    mutual += count_mutual(g, static_cast<std::uint32_t>(u));
  return static_cast<double>(mutual) / static_cast<double>(g.num_edges());
}

namespace {

double clustering_of(const DirectedGraph& g, std::uint32_t u) {
  const auto m = mutual_neighbors(g, u);
  const std::size_t k = m.size();
  if (k < 2) return 0.0;
  std::size_t links = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto mi = mutual_neighbors(g, m[i]);
    for (std::size_t j = i + 1; j < k; ++j)
      if (std::binary_search(mi.begin(), mi.end(), m[j])) ++links;
  }
  return 2.0 * static_cast<double>(links) /
         (static_cast<double>(k) * static_cast<double>(k - 1));
}

}  // namespace

std::vector<double> local_clustering_serial(const DirectedGraph& g, ClusteringMode) {
  std::vector<double> cc(g.num_nodes(), 0.0);
  for (std::uint32_t u = 0; u < g.num_nodes(); ++u) cc[u] = clustering_of(g, u);
  return cc;
}

std::vector<double> local_clustering(const DirectedGraph& g, ClusteringMode) {
  std::vector<double> cc(g.num_nodes(), 0.0);
  const long long n = static_cast<long long>(g.num_nodes());
#pragma omp parallel for schedule(dynamic, 64)
  for (long long u = 0; u < n; ++u)
    cc[static_cast<std::size_t>(u)] = clustering_of(g, static_cast<std::uint32_t>(u));
  return cc;
}

std::vector<std::int32_t> bfs_distances(const DirectedGraph& g,
                                        std::uint32_t source,
                                        std::int32_t max_depth,
                                        Orientation orientation) {
  if (source >= g.num_nodes()) throw AnalysisError("bfs: unknown source node");
  std::vector<std::int32_t> dist(g.num_nodes(), -1);
  dist[source] = 0;
  if (max_depth <= 0) return dist;
  std::deque<std::uint32_t> queue{source};
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    if (dist[u] >= max_depth) continue;
    const auto adj = orientation == Orientation::forward ? g.out(u) : g.in(u);
    for (std::uint32_t v : adj)
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

}  // namespace graph
}  // namespace cqabuse
