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

#include "cqabuse/parallel.hpp"

#include <omp.h>

namespace cqabuse::par {

namespace {
int g_threads = 0;
}

int threads_count() {
  if (g_threads > 0) return g_threads;
  return omp_get_max_threads();
}

void set_threads(int n) {
  g_threads = n;
  if (n > 0) omp_set_num_threads(n);
}

double chunked_sum_serial(std::span<const double> values) {
  const std::size_t n = values.size();
  const std::size_t chunks = (n + kSumChunk - 1) / kSumChunk;
  std::vector<double> partial(chunks, 0.0);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t lo = c * kSumChunk;
    const std::size_t hi = lo + kSumChunk < n ? lo + kSumChunk : n;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += values[i];
    partial[c] = acc;
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

double chunked_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  const std::size_t chunks = (n + kSumChunk - 1) / kSumChunk;
  std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kSumChunk;
    const std::size_t hi = lo + kSumChunk < n ? lo + kSumChunk : n;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += values[i];
    partial[static_cast<std::size_t>(c)] = acc;
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

}  // namespace cqabuse::par
