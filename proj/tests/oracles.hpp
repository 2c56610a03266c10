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

// Independent brute-force reference implementations used to cross-check the
// library kernels.  Everything in this header favors the most literal
// formulation of each definition over speed and deliberately shares no code
// with src/: graph kernels work on raw edge lists, regression solves the
// normal equations directly, and the permutation test enumerates assignments.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cqabuse/corpus.hpp"
#include "cqabuse/graph.hpp"
#include "cqabuse/rng.hpp"

namespace oracles {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

inline std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

inline std::unordered_set<std::uint64_t> edge_set(const std::vector<Edge>& edges) {
  std::unordered_set<std::uint64_t> have;
  have.reserve(edges.size() * 2);
  for (const Edge& e : edges) have.insert(edge_key(e.first, e.second));
  return have;
}

// Fraction of directed edges whose reverse edge also exists.
inline double reciprocity_bruteforce(const std::vector<Edge>& edges) {
  const auto have = edge_set(edges);
  std::size_t mutual = 0;
  for (const Edge& e : edges)
    if (have.count(edge_key(e.second, e.first))) ++mutual;
  return static_cast<double>(mutual) / static_cast<double>(edges.size());
}

// Weak-component label per node: the smallest node index in its component,
// found by re-running min-label relaxation until nothing changes.
inline std::vector<std::uint32_t> component_min_labels_bruteforce(
    std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::uint32_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = static_cast<std::uint32_t>(i);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Edge& e : edges) {
      const std::uint32_t lo = std::min(label[e.first], label[e.second]);
      if (label[e.first] != lo) {
        label[e.first] = lo;
        changed = true;
      }
      if (label[e.second] != lo) {
        label[e.second] = lo;
        changed = true;
      }
    }
  }
  return label;
}

// Local clustering on the undirected graph of reciprocated pairs: for every
// node, the fraction of its mutual-neighbor pairs that are mutual neighbors
// of each other.
inline std::vector<double> clustering_bruteforce(std::size_t n,
                                                 const std::vector<Edge>& edges) {
  const auto have = edge_set(edges);
  const auto is_mutual = [&](std::uint32_t a, std::uint32_t b) {
    return have.count(edge_key(a, b)) != 0 && have.count(edge_key(b, a)) != 0;
  };
  std::vector<std::vector<std::uint32_t>> mutual(n);
  for (const Edge& e : edges)
    if (e.first < e.second && is_mutual(e.first, e.second)) {
      mutual[e.first].push_back(e.second);
      mutual[e.second].push_back(e.first);
    }
  std::vector<double> coef(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& nb = mutual[i];
    const std::size_t k = nb.size();
    if (k < 2) continue;
    std::size_t links = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (is_mutual(nb[a], nb[b])) ++links;
    coef[i] = 2.0 * static_cast<double>(links) /
              (static_cast<double>(k) * static_cast<double>(k - 1));
  }
  return coef;
}

// Hop distances by repeated edge relaxation (no queue): dist[v] settles to the
// shortest path length from source not exceeding max_depth, else -1.
inline std::vector<std::int32_t> bfs_bruteforce(std::size_t n,
                                                const std::vector<Edge>& edges,
                                                std::uint32_t source,
                                                std::int32_t max_depth,
                                                bool reverse) {
  std::vector<std::int32_t> dist(n, -1);
  dist[source] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Edge& e : edges) {
      const std::uint32_t from = reverse ? e.second : e.first;
      const std::uint32_t to = reverse ? e.first : e.second;
      if (dist[from] < 0 || dist[from] + 1 > max_depth) continue;
      if (dist[to] < 0 || dist[from] + 1 < dist[to]) {
        dist[to] = dist[from] + 1;
        changed = true;
      }
    }
  }
  return dist;
}

// Pearson correlation of attr(source) vs attr(target) over all edges,
// computed with the plain two-pass textbook formula.
inline double assortativity_bruteforce(const std::vector<Edge>& edges,
                                       const std::vector<double>& attr) {
  const double m = static_cast<double>(edges.size());
  double mx = 0.0, my = 0.0;
  for (const Edge& e : edges) {
    mx += attr[e.first];
    my += attr[e.second];
  }
  mx /= m;
  my /= m;
  double cov = 0.0, vx = 0.0, vy = 0.0;
  for (const Edge& e : edges) {
    const double dx = attr[e.first] - mx;
    const double dy = attr[e.second] - my;
    cov += dx * dy;
    vx += dx * dx;
    vy += dy * dy;
  }
  return cov / std::sqrt(vx * vy);
}

// Two-pass Pearson correlation of paired samples.
inline double pearson_bruteforce(std::span<const double> x,
                                 std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double cov = 0.0, vx = 0.0, vy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (x[i] - mx) * (y[i] - my);
    vx += (x[i] - mx) * (x[i] - mx);
    vy += (y[i] - my) * (y[i] - my);
  }
  return cov / std::sqrt(vx * vy);
}

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};

// Simple-regression normal equations solved by Cramer's rule with long-double
// accumulators: slope = (n*Sxy - Sx*Sy) / (n*Sxx - Sx^2).
inline LineFit ols_bruteforce(std::span<const double> x,
                              std::span<const double> y) {
  const long double n = static_cast<long double>(x.size());
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  const long double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const long double intercept = (sy - slope * sx) / n;
  long double ss_res = 0, ss_tot = 0;
  const long double ybar = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double e = y[i] - (intercept + slope * x[i]);
    ss_res += e * e;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  LineFit fit;
  fit.intercept = static_cast<double>(intercept);
  fit.slope = static_cast<double>(slope);
  fit.r_squared = ss_tot > 0 ? static_cast<double>(1.0L - ss_res / ss_tot) : 0.0;
  return fit;
}

// Exhaustive two-sample KS statistic: evaluate |F_a - F_b| at every pooled
// sample point with F(t) = P(X <= t).
inline double ks_bruteforce(std::span<const double> a, std::span<const double> b) {
  std::vector<double> pool(a.begin(), a.end());
  pool.insert(pool.end(), b.begin(), b.end());
  double d = 0.0;
  for (const double t : pool) {
    std::size_t ca = 0, cb = 0;
    for (const double v : a) ca += v <= t ? 1 : 0;
    for (const double v : b) cb += v <= t ? 1 : 0;
    const double fa = static_cast<double>(ca) / static_cast<double>(a.size());
    const double fb = static_cast<double>(cb) / static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

// Exact permutation p-value for the |mean(a) - mean(b)| statistic: enumerate
// every split of the pooled sample into groups of the original sizes and
// count how many reach the observed statistic.  Only usable for small inputs.
inline double permutation_pvalue_bruteforce(std::span<const double> a,
                                            std::span<const double> b) {
  std::vector<double> pool(a.begin(), a.end());
  pool.insert(pool.end(), b.begin(), b.end());
  const std::size_t n = pool.size();
  const std::size_t n1 = a.size();
  double ma = 0, mb = 0;
  for (const double v : a) ma += v;
  for (const double v : b) mb += v;
  const double observed = std::abs(ma / static_cast<double>(n1) -
                                   mb / static_cast<double>(n - n1));
  // Selection mask in next_permutation order: zeros first, then ones.
  std::vector<int> mask(n, 0);
  for (std::size_t i = n - n1; i < n; ++i) mask[i] = 1;
  std::size_t total = 0, at_least = 0;
  do {
    double sa = 0, sb = 0;
    for (std::size_t i = 0; i < n; ++i)
      (mask[i] ? sa : sb) += pool[i];
    const double diff = std::abs(sa / static_cast<double>(n1) -
                                 sb / static_cast<double>(n - n1));
    ++total;
    if (diff >= observed - 1e-12) ++at_least;
  } while (std::next_permutation(mask.begin(), mask.end()));
  return static_cast<double>(at_least) / static_cast<double>(total);
}

// Type-7 quantile: linear interpolation between order statistics at
// h = q * (n - 1).
inline double quantile_bruteforce(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double h = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(h));
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline double mean_bruteforce(std::span<const double> v) {
  double s = 0;
  for (const double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sample_sd_bruteforce(std::span<const double> v) {
  const double m = mean_bruteforce(v);
  double s = 0;
  for (const double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// ---------------------------------------------------------------------------
// Event-count recount: rebuild every ledger field from the raw event stream
// with plain loops and lookup maps, mirroring the documented bookkeeping
// (+2 per answer, +10 per best answer, -5 per question, +3 to the asker of a
// question once it has a best answer; a post counts as flagged only once).
inline cqabuse::corpus::LedgerMap recount_ledgers_bruteforce(
    const cqabuse::corpus::EventCorpus& c) {
  using cqabuse::corpus::PostKind;
  cqabuse::corpus::LedgerMap out;
  for (const auto& u : c.users) out[u.user_id];

  std::map<std::string, const cqabuse::corpus::PostEvent*> post_by_id;
  for (const auto& p : c.posts) post_by_id[p.post_id] = &p;

  std::set<std::string> asker_bonus_questions;
  for (const auto& p : c.posts) {
    auto& l = out.at(p.author);
    if (p.kind == PostKind::question) {
      l.n_questions += 1;
      l.points -= 5;
    } else {
      l.n_answers += 1;
      l.points += 2;
      if (p.best_answer) {
        l.n_best_answers += 1;
        l.points += 10;
        l.award_ratings_sum += p.answer_rating;
        asker_bonus_questions.insert(p.parent_question);
      }
    }
    l.thumbs_up_sum += p.thumbs_up;
    l.thumbs_down_sum += p.thumbs_down;
  }
  for (const auto& q_id : asker_bonus_questions) {
    const auto it = post_by_id.find(q_id);
    if (it != post_by_id.end()) out.at(it->second->author).points += 3;
  }

  std::set<std::string> seen_flagged_posts;
  for (const auto& f : c.flags) {
    const auto pit = post_by_id.find(f.target_post);
    if (pit == post_by_id.end()) continue;
    const auto& post = *pit->second;
    const bool on_question = post.kind == PostKind::question;
    auto& recv = out.at(post.author);
    auto& rept = out.at(f.reporter);
    if (on_question) {
      recv.q_flags_received += 1;
      if (f.valid) recv.q_flags_received_valid += 1;
      rept.q_flags_reported += 1;
      if (f.valid) rept.q_flags_reported_valid += 1;
    } else {
      recv.a_flags_received += 1;
      if (f.valid) recv.a_flags_received_valid += 1;
      rept.a_flags_reported += 1;
      if (f.valid) rept.a_flags_reported_valid += 1;
    }
    if (seen_flagged_posts.insert(f.target_post).second) {
      if (on_question)
        recv.n_flagged_questions += 1;
      else
        recv.n_flagged_answers += 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random inputs shared by the oracle-comparison suites.

struct RandomGraphSpec {
  std::size_t n = 0;
  std::vector<Edge> edges;  // simple: no self-loops, no duplicates
};

// Random simple directed graph with n in [2, max_nodes] and roughly
// mean_degree out-edges per node.
inline RandomGraphSpec random_graph(cqabuse::Rng& rng, std::size_t max_nodes,
                                    double mean_degree = 4.0) {
  RandomGraphSpec g;
  g.n = 2 + static_cast<std::size_t>(rng.uniform_int(max_nodes - 1));
  const std::size_t want = static_cast<std::size_t>(
      mean_degree * static_cast<double>(g.n) * (0.25 + 1.5 * rng.uniform01()));
  std::set<Edge> chosen;
  for (std::size_t tries = 0; tries < want * 4 && chosen.size() < want; ++tries) {
    const auto a = static_cast<std::uint32_t>(rng.uniform_int(g.n));
    const auto b = static_cast<std::uint32_t>(rng.uniform_int(g.n));
    if (a == b) continue;
    chosen.insert({a, b});
    if (rng.bernoulli(0.3)) chosen.insert({b, a});  // seed some reciprocity
  }
  if (chosen.empty()) chosen.insert({0, 1});
  g.edges.assign(chosen.begin(), chosen.end());
  return g;
}

// Zero-padded node id so lexicographic id order equals numeric order and the
// library graph's node index i maps back to oracle node i.
inline std::string node_id(std::size_t i) {
  std::string s = std::to_string(i);
  return "n" + std::string(6 - s.size(), '0') + s;
}

inline cqabuse::DirectedGraph to_library_graph(const RandomGraphSpec& g) {
  std::vector<std::string> ids;
  ids.reserve(g.n);
  for (std::size_t i = 0; i < g.n; ++i) ids.push_back(node_id(i));
  std::vector<std::pair<std::string, std::string>> edges;
  edges.reserve(g.edges.size());
  for (const Edge& e : g.edges)
    edges.emplace_back(node_id(e.first), node_id(e.second));
  return cqabuse::DirectedGraph::build(std::move(ids), edges);
}

// Random activity ledgers with guaranteed post-count variation on both kinds,
// so regression fits are always well-posed.
inline cqabuse::corpus::LedgerMap random_ledgers(cqabuse::Rng& rng,
                                                 std::size_t max_users = 200) {
  cqabuse::corpus::LedgerMap out;
  const std::size_t n = 5 + rng.uniform_int(max_users - 4);
  for (std::size_t i = 0; i < n; ++i) {
    cqabuse::corpus::UserLedger l;
    l.n_questions = static_cast<std::int64_t>(rng.poisson(4.0));
    l.n_answers = static_cast<std::int64_t>(rng.poisson(6.0));
    l.q_flags_received = static_cast<std::int64_t>(
        rng.poisson(0.4 * static_cast<double>(l.n_questions) + 0.1));
    l.a_flags_received = static_cast<std::int64_t>(
        rng.poisson(0.3 * static_cast<double>(l.n_answers) + 0.1));
    l.q_flags_received_valid = static_cast<std::int64_t>(
        rng.uniform_int(static_cast<std::uint64_t>(l.q_flags_received) + 1));
    l.a_flags_received_valid = static_cast<std::int64_t>(
        rng.uniform_int(static_cast<std::uint64_t>(l.a_flags_received) + 1));
    out[node_id(i)] = l;
  }
  // Force >= 2 distinct positive post counts per kind.
  out[node_id(0)].n_questions = 1;
  out[node_id(1)].n_questions = 7;
  out[node_id(0)].n_answers = 2;
  out[node_id(1)].n_answers = 9;
  return out;
}

}  // namespace oracles
