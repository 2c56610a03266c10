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

#include <cmath>
#include <numeric>
#include <vector>

#include "cqabuse/corpus.hpp"
#include "cqabuse/graph.hpp"
#include "cqabuse/homophily.hpp"
#include "cqabuse/parallel.hpp"
#include "cqabuse/rng.hpp"
#include "cqabuse/stats.hpp"
#include "cqabuse/synth.hpp"
#include "doctest.h"

using namespace cqabuse;
namespace synth = cqabuse::corpus;

namespace {

corpus::EventCorpus planted_corpus() {
  synth::SyntheticConfig cfg;
  cfg.n_users = 600;
  cfg.seed = 5;
  return synth::generate_synthetic(cfg);
}

void check_profiles_equal(const homophily::DistanceProfile& a,
                          const homophily::DistanceProfile& b) {
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].hop == b.points[i].hop);
    CHECK(a.points[i].probability == b.points[i].probability);  // bitwise
    CHECK(a.points[i].n_users == b.points[i].n_users);
  }
}

//! Every parallel-vs-serial check below runs with 2 OpenMP threads forced on,
//! restored to the runtime default afterwards.
struct TwoThreads {
  TwoThreads() { par::set_threads(2); }
  ~TwoThreads() { par::set_threads(0); }
};

}  // namespace

TEST_CASE("the thread-count setter drives the OpenMP runtime") {
  par::set_threads(2);
  CHECK(par::threads_count() == 2);
  par::set_threads(3);
  CHECK(par::threads_count() == 3);
  par::set_threads(0);
  CHECK(par::threads_count() >= 1);
}

TEST_CASE("chunked sums are bitwise stable across thread counts") {
  TwoThreads guard;
  Rng rng(17);
  std::vector<double> values;
  for (int i = 0; i < 3 * static_cast<int>(par::kSumChunk) + 345; ++i)
    values.push_back(rng.normal() * std::pow(10.0, rng.uniform_int(6)));

  const double parallel = par::chunked_sum(values);
  const double serial = par::chunked_sum_serial(values);
  CHECK(parallel == serial);  // identical chunk combine order

  const double plain = std::accumulate(values.begin(), values.end(), 0.0);
  CHECK(parallel == doctest::Approx(plain).epsilon(1e-9));

  // Inputs shorter than one chunk reduce in plain left-to-right order.
  const std::vector<double> small{0.1, 0.2, 0.3, 1e9, -1e9};
  CHECK(par::chunked_sum(small) ==
        std::accumulate(small.begin(), small.end(), 0.0));
  const std::vector<double> empty;
  CHECK(par::chunked_sum(empty) == 0.0);
}

TEST_CASE("graph kernels agree with their serial references") {
  TwoThreads guard;
  const auto c = planted_corpus();
  const auto ff = corpus::build_ff_network(c);

  CHECK(graph::reciprocity(ff) == graph::reciprocity_serial(ff));

  const auto cc_par = graph::local_clustering(ff);
  const auto cc_ser = graph::local_clustering_serial(ff);
  REQUIRE(cc_par.size() == cc_ser.size());
  for (std::size_t i = 0; i < cc_par.size(); ++i) CHECK(cc_par[i] == cc_ser[i]);
}

TEST_CASE("permutation tests agree with the serial reference in both modes") {
  TwoThreads guard;
  Rng rng(23);
  std::vector<double> a, b;
  for (int i = 0; i < 40; ++i) a.push_back(rng.normal());
  for (int i = 0; i < 35; ++i) b.push_back(rng.normal(0.4, 1.0));

  // Monte Carlo mode: 4000 draws over a huge split space.
  const auto mc_par = stats::permutation_test(a, b, 4000, 7);
  const auto mc_ser = stats::permutation_test_serial(a, b, 4000, 7);
  CHECK_FALSE(mc_par.exact);
  CHECK(mc_par.p_value == mc_ser.p_value);
  CHECK(mc_par.statistic == mc_ser.statistic);
  CHECK(mc_par.observed_diff == mc_ser.observed_diff);
  CHECK(mc_par.n_draws == mc_ser.n_draws);

  // Exhaustive mode: all C(8,4) = 70 splits.
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> ys{2.5, 3.5, 4.5, 5.5};
  const auto ex_par = stats::permutation_test(xs, ys, 100, 7);
  const auto ex_ser = stats::permutation_test_serial(xs, ys, 100, 7);
  CHECK(ex_par.exact);
  CHECK(ex_par.n_draws == 70);
  CHECK(ex_par.p_value == ex_ser.p_value);
  CHECK(ex_par.statistic == ex_ser.statistic);
}

TEST_CASE("distance profiles agree with their serial references") {
  TwoThreads guard;
  const auto c = planted_corpus();
  const auto ff = corpus::build_ff_network(c);

  check_profiles_equal(
      homophily::answer_distance_profile(ff, c, 3, 400, 11),
      homophily::answer_distance_profile_serial(ff, c, 3, 400, 11));
  check_profiles_equal(
      homophily::flag_distance_profile(ff, c, 3, 400, 11),
      homophily::flag_distance_profile_serial(ff, c, 3, 400, 11));

  Rng rng(29);
  std::vector<double> scores;
  for (std::size_t i = 0; i < ff.num_nodes(); ++i)
    scores.push_back(rng.normal());
  check_profiles_equal(
      homophily::deviance_similarity_profile(ff, scores, 0.5, 3, 400, 11),
      homophily::deviance_similarity_profile_serial(ff, scores, 0.5, 3, 400,
                                                    11));
}

TEST_CASE("report histograms agree with their serial references") {
  TwoThreads guard;
  const auto c = planted_corpus();
  const auto ff = corpus::build_ff_network(c);

  for (const auto variant : {homophily::HistogramVariant::observed,
                             homophily::HistogramVariant::null_model}) {
    const auto par_hist =
        homophily::report_distance_histogram(ff, c.flags, variant, 4, 13);
    const auto ser_hist =
        homophily::report_distance_histogram_serial(ff, c.flags, variant, 4, 13);
    CHECK(par_hist.variant == ser_hist.variant);
    CHECK(par_hist.n_pairs == ser_hist.n_pairs);
    CHECK(par_hist.unreachable_pct == ser_hist.unreachable_pct);
    REQUIRE(par_hist.hop_pct.size() == ser_hist.hop_pct.size());
    for (std::size_t h = 0; h < par_hist.hop_pct.size(); ++h)
      CHECK(par_hist.hop_pct[h] == ser_hist.hop_pct[h]);
  }
}

TEST_CASE("assortativity agrees with its serial reference") {
  TwoThreads guard;
  const auto c = planted_corpus();
  const auto ff = corpus::build_ff_network(c);
  Rng rng(31);
  std::vector<double> attr;
  for (std::size_t i = 0; i < ff.num_nodes(); ++i) attr.push_back(rng.normal());
  CHECK(homophily::attribute_assortativity(ff, attr) ==
        homophily::attribute_assortativity_serial(ff, attr));
}
