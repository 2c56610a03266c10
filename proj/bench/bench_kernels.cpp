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

// Side-by-side timings of the OpenMP kernels against their serial reference
// implementations on seeded random graphs and samples.  Run with
// --benchmark_filter=... to narrow; OMP_NUM_THREADS scales the parallel rows.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <benchmark/benchmark.h>

#include "cqabuse/corpus.hpp"
#include "cqabuse/graph.hpp"
#include "cqabuse/homophily.hpp"
#include "cqabuse/rng.hpp"
#include "cqabuse/stats.hpp"

namespace {

using cqabuse::DirectedGraph;
using cqabuse::Rng;
namespace gr = cqabuse::graph;
namespace hp = cqabuse::homophily;
namespace st = cqabuse::stats;

//! Random directed graph with n nodes and roughly mean_degree * n edges.
DirectedGraph random_graph(std::size_t n, double mean_degree,
                           std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = "n" + std::to_string(i);
  const auto n_edges =
      static_cast<std::size_t>(mean_degree * static_cast<double>(n));
  std::vector<std::pair<std::string, std::string>> edges;
  edges.reserve(n_edges);
  for (std::size_t e = 0; e < n_edges; ++e) {
    const auto u = rng.uniform_int(n);
    const auto v = rng.uniform_int(n);
    if (u != v) edges.emplace_back(ids[u], ids[v]);
  }
  return DirectedGraph::build(std::move(ids), edges);
}

std::vector<double> random_attr(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> attr(n);
  for (auto& v : attr) v = rng.normal();
  return attr;
}

std::vector<cqabuse::corpus::FlagEvent> random_flags(const DirectedGraph& g,
                                                     std::size_t count,
                                                     std::uint64_t seed) {
  Rng rng(seed);
  std::vector<cqabuse::corpus::FlagEvent> flags(count);
  for (auto& f : flags) {
    f.reporter = g.node_id(static_cast<std::uint32_t>(
        rng.uniform_int(g.num_nodes())));
    f.reportee = g.node_id(static_cast<std::uint32_t>(
        rng.uniform_int(g.num_nodes())));
    f.target_post = "q0";
    f.valid = true;
  }
  return flags;
}

constexpr std::size_t kNodes = 20000;
constexpr double kMeanDegree = 8.0;
constexpr std::uint64_t kSeed = 7;

const DirectedGraph& bench_graph() {
  static const DirectedGraph g = random_graph(kNodes, kMeanDegree, kSeed);
  return g;
}

void BM_ReciprocitySerial(benchmark::State& state) {
  const auto& g = bench_graph();
  for (auto _ : state) benchmark::DoNotOptimize(gr::reciprocity_serial(g));
}
BENCHMARK(BM_ReciprocitySerial);

void BM_ReciprocityParallel(benchmark::State& state) {
  const auto& g = bench_graph();
  for (auto _ : state) benchmark::DoNotOptimize(gr::reciprocity(g));
}
BENCHMARK(BM_ReciprocityParallel);

void BM_ClusteringSerial(benchmark::State& state) {
  const auto& g = bench_graph();
  for (auto _ : state) benchmark::DoNotOptimize(gr::local_clustering_serial(g));
}
BENCHMARK(BM_ClusteringSerial);

void BM_ClusteringParallel(benchmark::State& state) {
  const auto& g = bench_graph();
  for (auto _ : state) benchmark::DoNotOptimize(gr::local_clustering(g));
}
BENCHMARK(BM_ClusteringParallel);

void BM_AssortativitySerial(benchmark::State& state) {
  const auto& g = bench_graph();
  const auto attr = random_attr(g.num_nodes(), kSeed + 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(hp::attribute_assortativity_serial(g, attr));
}
BENCHMARK(BM_AssortativitySerial);

void BM_AssortativityParallel(benchmark::State& state) {
  const auto& g = bench_graph();
  const auto attr = random_attr(g.num_nodes(), kSeed + 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(hp::attribute_assortativity(g, attr));
}
BENCHMARK(BM_AssortativityParallel);

void BM_ReportHistogramSerial(benchmark::State& state) {
  const auto& g = bench_graph();
  const auto flags = random_flags(g, 5000, kSeed + 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(hp::report_distance_histogram_serial(
        g, flags, hp::HistogramVariant::observed, 4, kSeed));
}
BENCHMARK(BM_ReportHistogramSerial);

void BM_ReportHistogramParallel(benchmark::State& state) {
  const auto& g = bench_graph();
  const auto flags = random_flags(g, 5000, kSeed + 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(hp::report_distance_histogram(
        g, flags, hp::HistogramVariant::observed, 4, kSeed));
}
BENCHMARK(BM_ReportHistogramParallel);

void BM_PermutationTestSerial(benchmark::State& state) {
  const auto a = random_attr(400, kSeed + 3);
  const auto b = random_attr(400, kSeed + 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(st::permutation_test_serial(a, b, 5000, kSeed));
}
BENCHMARK(BM_PermutationTestSerial);

void BM_PermutationTestParallel(benchmark::State& state) {
  const auto a = random_attr(400, kSeed + 3);
  const auto b = random_attr(400, kSeed + 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(st::permutation_test(a, b, 5000, kSeed));
}
BENCHMARK(BM_PermutationTestParallel);

}  // namespace

BENCHMARK_MAIN();
