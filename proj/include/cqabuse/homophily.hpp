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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cqabuse/corpus.hpp"
#include "cqabuse/graph.hpp"

namespace cqabuse::homophily {

//! Smoothing constant for geometric-mean aggregation of per-user
//! probabilities (keeps all-zero hops finite on log plots).
inline constexpr double kSmoothingEpsilon = 1e-6;

struct ProfilePoint {
  int hop = 0;
  double probability = 0.0;   // smoothed geometric mean over contributing users
  std::size_t n_users = 0;    // users with >= 1 follower at this hop
};

//! Probability-vs-social-distance curve.  Hops run 1..H ascending; a hop
//! where no sampled user has any follower keeps probability 0 with n_users 0.
struct DistanceProfile {
  std::vector<ProfilePoint> points;
};

//! P(an h-hop follower of u answered at least one of u's questions),
//! aggregated over a seeded uniform sample of users (sample_size >= node
//! count means every node).  Followers are found by reverse BFS over `ff`.
DistanceProfile answer_distance_profile(const DirectedGraph& ff,
                                        const corpus::EventCorpus& corpus,
                                        int max_hop, std::size_t sample_size,
                                        std::uint64_t seed);
DistanceProfile answer_distance_profile_serial(const DirectedGraph& ff,
                                               const corpus::EventCorpus& corpus,
                                               int max_hop,
                                               std::size_t sample_size,
                                               std::uint64_t seed);

//! Same construction with "s valid-flagged u" as the numerator event; `g`
//! may be the follow network or the answer network.
DistanceProfile flag_distance_profile(const DirectedGraph& g,
                                      const corpus::EventCorpus& corpus,
                                      int max_hop, std::size_t sample_size,
                                      std::uint64_t seed);
DistanceProfile flag_distance_profile_serial(const DirectedGraph& g,
                                             const corpus::EventCorpus& corpus,
                                             int max_hop,
                                             std::size_t sample_size,
                                             std::uint64_t seed);

//! P(|score(u) - score(s)| < delta) for h-hop followers s of u.  `delta` is
//! an absolute score difference; callers wanting "within k standard
//! deviations" pass k * sd(scores).  `scores` is indexed by graph node index.
DistanceProfile deviance_similarity_profile(const DirectedGraph& ff,
                                            std::span<const double> scores,
                                            double delta, int max_hop,
                                            std::size_t sample_size,
                                            std::uint64_t seed);
DistanceProfile deviance_similarity_profile_serial(
    const DirectedGraph& ff, std::span<const double> scores, double delta,
    int max_hop, std::size_t sample_size, std::uint64_t seed);

enum class HistogramVariant { observed, null_model };

//! Share of (reporter, reportee) pairs at each shortest-path distance.
//! `hop_pct[h-1]` covers distance h for h in 1..H; `unreachable_pct` covers
//! pairs with no path of length <= H.  Percentages sum to 100 over n_pairs.
struct ReportDistanceHistogram {
  HistogramVariant variant = HistogramVariant::observed;
  std::vector<double> hop_pct;
  double unreachable_pct = 0.0;
  std::size_t n_pairs = 0;
};

//! Observed variant buckets every flag event by the distance from its
//! reporter to its reportee; the null variant draws the same number of
//! uniform (src != tgt) node pairs from `seed`.  With the default reverse
//! orientation the distance is the forward path length reporter -> reportee
//! (follower semantics); Orientation::forward measures reportee -> reporter
//! instead.  Degenerate reporter == reportee pairs are skipped.  Throws
//! AnalysisError when no pairs remain.
ReportDistanceHistogram report_distance_histogram(
    const DirectedGraph& g, const std::vector<corpus::FlagEvent>& flags,
    HistogramVariant variant, int max_hop, std::uint64_t seed,
    graph::Orientation orientation = graph::Orientation::reverse);
ReportDistanceHistogram report_distance_histogram_serial(
    const DirectedGraph& g, const std::vector<corpus::FlagEvent>& flags,
    HistogramVariant variant, int max_hop, std::uint64_t seed,
    graph::Orientation orientation = graph::Orientation::reverse);

//! Numeric-attribute assortativity: Pearson correlation between attr(source)
//! and attr(target) over all directed edges.  `attr` is indexed by graph node
//! index.  Throws AnalysisError on an edgeless graph or zero variance at
//! either endpoint position.
double attribute_assortativity(const DirectedGraph& g,
                               std::span<const double> attr);
double attribute_assortativity_serial(const DirectedGraph& g,
                                      std::span<const double> attr);

}  // namespace cqabuse::homophily
