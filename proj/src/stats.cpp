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

#include "cqabuse/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cqabuse/errors.hpp"
#include "cqabuse/rng.hpp"

namespace cqabuse::stats {

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw AnalysisError("pearson: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw AnalysisError("pearson: need at least 2 points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) throw AnalysisError("pearson: zero variance input");
  return sxy / std::sqrt(sxx * syy);
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> sample, DistKind kind)
    : values_(std::move(sample)), kind_(kind) {
  if (values_.empty()) throw AnalysisError("empirical distribution: empty sample");
  std::sort(values_.begin(), values_.end());
}

double EmpiricalDistribution::operator()(double x) const {
  const double n = static_cast<double>(values_.size());
  if (kind_ == DistKind::cdf) {
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(it - values_.begin()) / n;
  }
  const auto it = std::lower_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(values_.end() - it) / n;
}

double EmpiricalDistribution::quantile(double q) const {
  if (q < 0.0) q = 0.0;
  if (q > 1.0) q = 1.0;
  const std::size_t n = values_.size();
  if (n == 1) return values_[0];
  const double h = q * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return values_[n - 1];
  const double frac = h - static_cast<double>(lo);
  return values_[lo] + frac * (values_[lo + 1] - values_[lo]);
}

EmpiricalDistribution empirical_distribution(std::span<const double> sample,
                                             DistKind kind) {
  return EmpiricalDistribution(std::vector<double>(sample.begin(), sample.end()),
                               kind);
}

DescriptiveStats descriptive(std::span<const double> sample) {
  EmpiricalDistribution dist(std::vector<double>(sample.begin(), sample.end()),
                             DistKind::cdf);
  const auto& v = dist.values();
  DescriptiveStats s;
  s.min = v.front();
  s.max = v.back();
  s.q1 = dist.quantile(0.25);
  s.median = dist.quantile(0.5);
  s.q3 = dist.quantile(0.75);
  double sum = 0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  return s;
}

double geometric_mean_smoothed(std::span<const double> p, double epsilon) {
  if (p.empty()) throw AnalysisError("geometric mean: empty input");
  if (epsilon <= 0.0) throw AnalysisError("geometric mean: epsilon must be > 0");
  double log_sum = 0.0;
  for (double v : p) log_sum += std::log(v + epsilon);
  return std::exp(log_sum / static_cast<double>(p.size()));
}

namespace {

//! Asymptotic Kolmogorov tail probability Q(lambda) = 2*sum (-1)^{k-1} e^{-2k^2 l^2}.
double kolmogorov_q(double lambda) {
  if (lambda <= 1e-9) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * lambda * lambda * k * k);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-12) break;
  }
  const double p = 2.0 * sum;
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

TwoSampleResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw AnalysisError("ks test: empty sample");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double n1 = static_cast<double>(sa.size());
  const double n2 = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double t = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= t) ++i;
    while (j < sb.size() && sb[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 -
                             static_cast<double>(j) / n2));
  }
  TwoSampleResult res;
  res.statistic = d;
  res.n1 = sa.size();
  res.n2 = sb.size();
  const double ne = n1 * n2 / (n1 + n2);
  res.p_value = kolmogorov_q(std::sqrt(ne) * d);
  return res;
}

namespace {

//! C(n, k) capped at kHugeSplits to avoid overflow.
constexpr unsigned long long kHugeSplits = 1ULL << 62;

unsigned long long binomial_capped(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned long long total = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    if (total > kHugeSplits / (n - k + i)) return kHugeSplits;
    total = total * (n - k + i) / i;  // exact: C(m, i) is integral
  }
  return total;
}

struct PermCore {
  double observed = 0.0;
  std::vector<double> stats;  // permutation statistics, deterministic order
  bool exact = false;
  unsigned long long total_splits = 0;
  std::size_t tail_count = 0;  // count of stats >= observed
};

double split_stat(const std::vector<double>& pool, double pool_sum,
                  double group_sum, std::size_t n1) {
  const std::size_t n2 = pool.size() - n1;
  return std::abs(group_sum / static_cast<double>(n1) -
                  (pool_sum - group_sum) / static_cast<double>(n2));
}

PermCore permutation_core(std::span<const double> a, std::span<const double> b,
                          std::size_t n_perm, std::uint64_t seed, bool parallel) {
  if (a.empty() || b.empty()) throw AnalysisError("permutation test: empty sample");
  const std::size_t n1 = a.size();
  std::vector<double> pool(a.begin(), a.end());
  pool.insert(pool.end(), b.begin(), b.end());
  const std::size_t n = pool.size();

  const double lo = *std::min_element(pool.begin(), pool.end());
  const double hi = *std::max_element(pool.begin(), pool.end());
  if (lo == hi)
    throw AnalysisError("permutation test: constant pooled sample (degenerate)");

  double pool_sum = 0.0, a_sum = 0.0;
  for (double v : pool) pool_sum += v;
  for (double v : a) a_sum += v;

  PermCore core;
  core.observed = split_stat(pool, pool_sum, a_sum, n1);
  const double tie_tol = 1e-12 * std::max(1.0, std::abs(core.observed));
  core.total_splits = binomial_capped(n, n1);

  if (core.total_splits <= n_perm) {
    // Exhaustive: walk all index combinations in lexicographic order.
    core.exact = true;
    core.stats.reserve(static_cast<std::size_t>(core.total_splits));
    std::vector<std::size_t> idx(n1);
    for (std::size_t i = 0; i < n1; ++i) idx[i] = i;
    for (;;) {
      double s = 0.0;
      for (std::size_t i : idx) s += pool[i];
      core.stats.push_back(split_stat(pool, pool_sum, s, n1));
      // advance combination
      std::size_t i = n1;
      while (i > 0 && idx[i - 1] == n - n1 + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < n1; ++j) idx[j] = idx[j - 1] + 1;
    }
  } else {
    core.stats.assign(n_perm, 0.0);
    Rng root(seed);
    const long long reps = static_cast<long long>(n_perm);
#pragma omp parallel for schedule(static) if (parallel)
    for (long long r = 0; r < reps; ++r) {
      Rng rng = root.fork(static_cast<std::uint64_t>(r) + 1);
      // Partial Fisher-Yates over a local index pool: first n1 slots form
      // group A.  Each replicate owns its slot, so results are identical for
      // any thread count.
      std::vector<std::uint32_t> order(n);
      for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
      double s = 0.0;
      for (std::size_t i = 0; i < n1; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_int(n - i));
        std::swap(order[i], order[j]);
        s += pool[order[i]];
      }
      core.stats[static_cast<std::size_t>(r)] = split_stat(pool, pool_sum, s, n1);
    }
  }

  for (double s : core.stats)
    if (s >= core.observed - tie_tol) ++core.tail_count;
  return core;
}

TwoSampleResult finish_permutation(const PermCore& core, std::size_t n1,
                                   std::size_t n2) {
  TwoSampleResult res;
  res.n1 = n1;
  res.n2 = n2;
  res.observed_diff = core.observed;
  res.exact = core.exact;
  res.n_draws = core.stats.size();

  const double m = static_cast<double>(core.stats.size());
  double mean = 0.0;
  for (double s : core.stats) mean += s;
  mean /= m;
  double var = 0.0;
  for (double s : core.stats) var += (s - mean) * (s - mean);
  var = m > 1 ? var / (m - 1) : 0.0;
  const double sd = std::sqrt(var);
  res.statistic = sd > 0.0 ? (core.observed - mean) / sd : 0.0;

  if (core.exact)
    res.p_value = static_cast<double>(core.tail_count) / m;
  else
    res.p_value = (1.0 + static_cast<double>(core.tail_count)) / (m + 1.0);
  return res;
}

}  // namespace

TwoSampleResult permutation_test(std::span<const double> a,
                                 std::span<const double> b, std::size_t n_perm,
                                 std::uint64_t seed) {
  const PermCore core = permutation_core(a, b, n_perm, seed, true);
  return finish_permutation(core, a.size(), b.size());
}

TwoSampleResult permutation_test_serial(std::span<const double> a,
                                        std::span<const double> b,
                                        std::size_t n_perm, std::uint64_t seed) {
  const PermCore core = permutation_core(a, b, n_perm, seed, false);
  return finish_permutation(core, a.size(), b.size());
}

}  // namespace cqabuse::stats
