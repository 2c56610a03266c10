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

#include "cqabuse/homophily.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "cqabuse/errors.hpp"
#include "cqabuse/rng.hpp"
#include "cqabuse/stats.hpp"

namespace cqabuse::homophily {

namespace {

using corpus::EventCorpus;
using corpus::FlagEvent;
using corpus::PostKind;
using graph::Orientation;

//! Seeded uniform node sample, returned ascending so downstream reductions
//! have one fixed summation order.
std::vector<std::uint32_t> pick_sample(std::size_t n, std::size_t sample_size,
                                       std::uint64_t seed) {
  std::vector<std::uint32_t> sample;
  if (sample_size >= n) {
    sample.resize(n);
    for (std::size_t i = 0; i < n; ++i) sample[i] = static_cast<std::uint32_t>(i);
    return sample;
  }
  Rng rng(seed);
  for (std::size_t i : rng.sample_indices(n, sample_size))
    sample.push_back(static_cast<std::uint32_t>(i));
  std::sort(sample.begin(), sample.end());
  return sample;
}

//! Per-user sorted membership lists ("who answered u" / "who flagged u"),
//! indexed by graph node index.
using MemberLists = std::vector<std::vector<std::uint32_t>>;

void sort_unique_all(MemberLists& lists) {
  for (auto& list : lists) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

MemberLists answerers_by_asker(const DirectedGraph& g, const EventCorpus& c) {
  std::unordered_map<std::string_view, std::uint32_t> question_author;
  question_author.reserve(c.posts.size());
  for (const auto& p : c.posts) {
    if (p.kind != PostKind::question) continue;
    if (auto idx = g.index_of(p.author)) question_author.emplace(p.post_id, *idx);
  }
  MemberLists lists(g.num_nodes());
  for (const auto& p : c.posts) {
    if (p.kind != PostKind::answer) continue;
    const auto asker = question_author.find(p.parent_question);
    const auto answerer = g.index_of(p.author);
    if (asker == question_author.end() || !answerer) continue;
    if (asker->second == *answerer) continue;
    lists[asker->second].push_back(*answerer);
  }
  sort_unique_all(lists);
  return lists;
}

MemberLists valid_flaggers_by_reportee(const DirectedGraph& g,
                                       const EventCorpus& c) {
  MemberLists lists(g.num_nodes());
  for (const auto& f : c.flags) {
    if (!f.valid) continue;
    const auto reporter = g.index_of(f.reporter);
    const auto reportee = g.index_of(f.reportee);
    if (!reporter || !reportee || *reporter == *reportee) continue;
    lists[*reportee].push_back(*reporter);
  }
  sort_unique_all(lists);
  return lists;
}

//! Shared profile engine: reverse level-BFS from each sampled user, per-hop
//! hit fraction via `pred(u, s)`, then a serial geometric-mean aggregation.
//! Results are thread-count independent: the parallel loop only writes
//! disjoint cells and every floating-point reduction happens serially in
//! sample order.
template <typename Pred>
DistanceProfile run_profile(const DirectedGraph& g, int max_hop,
                            std::size_t sample_size, std::uint64_t seed,
                            bool parallel, Pred pred) {
  if (max_hop < 1) throw ConfigError("max_hop must be at least 1");
  const std::size_t n = g.num_nodes();
  const std::vector<std::uint32_t> sample = pick_sample(n, sample_size, seed);
  const std::size_t hops = static_cast<std::size_t>(max_hop);
  // cell[i*hops + (h-1)] = per-user probability at hop h, or -1 when the user
  // has no followers at that hop.
  std::vector<double> cell(sample.size() * hops, -1.0);

#pragma omp parallel if (parallel)
  {
    std::vector<std::int32_t> dist(n, -1);
    std::vector<std::uint32_t> touched, cur, next;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(sample.size()); ++i) {
      const std::uint32_t u = sample[static_cast<std::size_t>(i)];
      dist[u] = 0;
      touched.push_back(u);
      cur.assign(1, u);
      for (std::size_t h = 1; h <= hops && !cur.empty(); ++h) {
        next.clear();
        for (std::uint32_t v : cur)
          for (std::uint32_t w : g.in(v))
            if (dist[w] < 0) {
              dist[w] = static_cast<std::int32_t>(h);
              touched.push_back(w);
              next.push_back(w);
            }
        if (!next.empty()) {
          std::size_t hits = 0;
          for (std::uint32_t s : next)
            if (pred(u, s)) ++hits;
          cell[static_cast<std::size_t>(i) * hops + h - 1] =
              static_cast<double>(hits) / static_cast<double>(next.size());
        }
        std::swap(cur, next);
      }
      for (std::uint32_t v : touched) dist[v] = -1;
      touched.clear();
      cur.clear();
    }
  }

  DistanceProfile profile;
  profile.points.reserve(hops);
  std::vector<double> ps;
  for (std::size_t h = 1; h <= hops; ++h) {
    ps.clear();
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const double p = cell[i * hops + h - 1];
      if (p >= 0.0) ps.push_back(p);
    }
    ProfilePoint pt;
    pt.hop = static_cast<int>(h);
    pt.n_users = ps.size();
    pt.probability =
        ps.empty() ? 0.0 : stats::geometric_mean_smoothed(ps, kSmoothingEpsilon);
    profile.points.push_back(pt);
  }
  return profile;
}

bool contains(const std::vector<std::uint32_t>& sorted, std::uint32_t v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

DistanceProfile membership_profile(const DirectedGraph& g, MemberLists lists,
                                   int max_hop, std::size_t sample_size,
                                   std::uint64_t seed, bool parallel) {
  return run_profile(g, max_hop, sample_size, seed, parallel,
                     [&lists](std::uint32_t u, std::uint32_t s) {
                       return contains(lists[u], s);
                     });
}

DistanceProfile similarity_profile(const DirectedGraph& g,
                                   std::span<const double> scores, double delta,
                                   int max_hop, std::size_t sample_size,
                                   std::uint64_t seed, bool parallel) {
  if (delta <= 0.0) throw ConfigError("similarity delta must be positive");
  if (scores.size() != g.num_nodes())
    throw AnalysisError("score vector length differs from node count");
  return run_profile(g, max_hop, sample_size, seed, parallel,
                     [scores, delta](std::uint32_t u, std::uint32_t s) {
                       return std::abs(scores[u] - scores[s]) < delta;
                     });
}

ReportDistanceHistogram histogram_impl(const DirectedGraph& g,
                                       const std::vector<FlagEvent>& flags,
                                       HistogramVariant variant, int max_hop,
                                       std::uint64_t seed,
                                       Orientation orientation, bool parallel) {
  if (max_hop < 1) throw ConfigError("max_hop must be at least 1");
  const std::size_t n = g.num_nodes();
  if (n == 0) throw AnalysisError("report histogram needs a nonempty graph");
  const std::size_t hops = static_cast<std::size_t>(max_hop);

  // sources_by_target[t] = all pair sources whose distance to/from t we need.
  std::vector<std::vector<std::uint32_t>> sources_by_target(n);
  std::size_t n_pairs = 0;
  if (variant == HistogramVariant::observed) {
    for (const FlagEvent& f : flags) {
      const auto src = g.index_of(f.reporter);
      const auto tgt = g.index_of(f.reportee);
      if (!src || !tgt)
        throw AnalysisError("flag references user '" +
                            (!src ? f.reporter : f.reportee) +
                            "' missing from the graph");
      if (*src == *tgt) continue;
      sources_by_target[*tgt].push_back(*src);
      ++n_pairs;
    }
  } else {
    if (n < 2) throw AnalysisError("null histogram needs at least 2 nodes");
    Rng rng(seed);
    for (std::size_t k = 0; k < flags.size(); ++k) {
      const auto src = static_cast<std::uint32_t>(rng.uniform_int(n));
      std::uint32_t tgt;
      do {
        tgt = static_cast<std::uint32_t>(rng.uniform_int(n));
      } while (tgt == src);
      sources_by_target[tgt].push_back(src);
      ++n_pairs;
    }
  }
  if (n_pairs == 0)
    throw AnalysisError("report histogram has no reporter/reportee pairs");

  std::vector<std::uint32_t> targets;
  for (std::uint32_t t = 0; t < n; ++t)
    if (!sources_by_target[t].empty()) targets.push_back(t);

  // Integer tallies: summation order cannot change the result, so a plain
  // critical-section merge keeps serial and parallel runs identical.
  std::vector<std::int64_t> buckets(hops + 1, 0);  // [0..hops-1]=hop, [hops]=unreachable
#pragma omp parallel if (parallel)
  {
    std::vector<std::int32_t> dist(n, -1);
    std::vector<std::uint32_t> touched, cur, next;
    std::vector<std::int64_t> local(hops + 1, 0);
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t ti = 0; ti < static_cast<std::int64_t>(targets.size()); ++ti) {
      const std::uint32_t t = targets[static_cast<std::size_t>(ti)];
      dist[t] = 0;
      touched.push_back(t);
      cur.assign(1, t);
      for (std::size_t h = 1; h <= hops && !cur.empty(); ++h) {
        next.clear();
        const bool reverse = orientation == Orientation::reverse;
        for (std::uint32_t v : cur) {
          const auto neighbors = reverse ? g.in(v) : g.out(v);
          for (std::uint32_t w : neighbors)
            if (dist[w] < 0) {
              dist[w] = static_cast<std::int32_t>(h);
              touched.push_back(w);
              next.push_back(w);
            }
        }
        std::swap(cur, next);
      }
      for (std::uint32_t s : sources_by_target[t]) {
        const std::int32_t d = dist[s];
        if (d >= 1)
          ++local[static_cast<std::size_t>(d - 1)];
        else
          ++local[hops];
      }
      for (std::uint32_t v : touched) dist[v] = -1;
      touched.clear();
      cur.clear();
    }
#pragma omp critical
    for (std::size_t b = 0; b <= hops; ++b) buckets[b] += local[b];
  }

  ReportDistanceHistogram hist;
  hist.variant = variant;
  hist.n_pairs = n_pairs;
  hist.hop_pct.resize(hops);
  for (std::size_t h = 0; h < hops; ++h)
    hist.hop_pct[h] =
        100.0 * static_cast<double>(buckets[h]) / static_cast<double>(n_pairs);
  hist.unreachable_pct =
      100.0 * static_cast<double>(buckets[hops]) / static_cast<double>(n_pairs);
  return hist;
}

double assortativity_impl(const DirectedGraph& g, std::span<const double> attr,
                          bool parallel) {
  if (attr.size() != g.num_nodes())
    throw AnalysisError("attribute vector length differs from node count");
  if (g.num_edges() == 0)
    throw AnalysisError("assortativity needs at least one edge");

  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) offset[u + 1] = offset[u] + g.out(u).size();

  std::vector<double> xs(g.num_edges()), ys(g.num_edges());
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t u = 0; u < static_cast<std::int64_t>(n); ++u) {
    const auto outs = g.out(static_cast<std::uint32_t>(u));
    std::size_t at = offset[static_cast<std::size_t>(u)];
    for (std::uint32_t v : outs) {
      xs[at] = attr[static_cast<std::size_t>(u)];
      ys[at] = attr[v];
      ++at;
    }
  }
  return stats::pearson(xs, ys);
}

}  // namespace

DistanceProfile answer_distance_profile(const DirectedGraph& ff,
                                        const EventCorpus& corpus, int max_hop,
                                        std::size_t sample_size,
                                        std::uint64_t seed) {
  return membership_profile(ff, answerers_by_asker(ff, corpus), max_hop,
                            sample_size, seed, true);
}

DistanceProfile answer_distance_profile_serial(const DirectedGraph& ff,
                                               const EventCorpus& corpus,
                                               int max_hop,
                                               std::size_t sample_size,
                                               std::uint64_t seed) {
  return membership_profile(ff, answerers_by_asker(ff, corpus), max_hop,
                            sample_size, seed, false);
}

DistanceProfile flag_distance_profile(const DirectedGraph& g,
                                      const EventCorpus& corpus, int max_hop,
                                      std::size_t sample_size,
                                      std::uint64_t seed) {
  return membership_profile(g, valid_flaggers_by_reportee(g, corpus), max_hop,
                            sample_size, seed, true);
}

DistanceProfile flag_distance_profile_serial(const DirectedGraph& g,
                                             const EventCorpus& corpus,
                                             int max_hop,
                                             std::size_t sample_size,
                                             std::uint64_t seed) {
  return membership_profile(g, valid_flaggers_by_reportee(g, corpus), max_hop,
                            sample_size, seed, false);
}

DistanceProfile deviance_similarity_profile(const DirectedGraph& ff,
                                            std::span<const double> scores,
                                            double delta, int max_hop,
                                            std::size_t sample_size,
                                            std::uint64_t seed) {
  return similarity_profile(ff, scores, delta, max_hop, sample_size, seed, true);
}

DistanceProfile deviance_similarity_profile_serial(
    const DirectedGraph& ff, std::span<const double> scores, double delta,
    int max_hop, std::size_t sample_size, std::uint64_t seed) {
  return similarity_profile(ff, scores, delta, max_hop, sample_size, seed,
                            false);
}

ReportDistanceHistogram report_distance_histogram(
    const DirectedGraph& g, const std::vector<FlagEvent>& flags,
    HistogramVariant variant, int max_hop, std::uint64_t seed,
    Orientation orientation) {
  return histogram_impl(g, flags, variant, max_hop, seed, orientation, true);
}

ReportDistanceHistogram report_distance_histogram_serial(
    const DirectedGraph& g, const std::vector<FlagEvent>& flags,
    HistogramVariant variant, int max_hop, std::uint64_t seed,
    Orientation orientation) {
  return histogram_impl(g, flags, variant, max_hop, seed, orientation, false);
}

double attribute_assortativity(const DirectedGraph& g,
                               std::span<const double> attr) {
  return assortativity_impl(g, attr, true);
}

double attribute_assortativity_serial(const DirectedGraph& g,
                                      std::span<const double> attr) {
  return assortativity_impl(g, attr, false);
}

}  // namespace cqabuse::homophily
