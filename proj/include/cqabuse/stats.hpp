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
#include <span>
#include <vector>

namespace cqabuse::stats {

//! Product-moment correlation.  Throws AnalysisError on length mismatch,
//! fewer than 2 points, or zero variance in either input.
double pearson(std::span<const double> x, std::span<const double> y);

enum class DistKind { cdf, ccdf };

//! Step-function empirical distribution.  CDF(x) = P(X <= x);
//! CCDF(x) = P(X >= x) (the >= convention keeps the minimum value on log
//! plots).  Throws AnalysisError on an empty sample.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution(std::vector<double> sample, DistKind kind);

  double operator()(double x) const;

  //! Type-7 quantile (linear interpolation of order statistics), q in [0,1].
  double quantile(double q) const;

  const std::vector<double>& values() const { return values_; }
  DistKind kind() const { return kind_; }

 private:
  std::vector<double> values_;  // sorted ascending
  DistKind kind_;
};

EmpiricalDistribution empirical_distribution(std::span<const double> sample,
                                             DistKind kind);

struct DescriptiveStats {
  double min = 0, q1 = 0, median = 0, mean = 0, q3 = 0, max = 0;
};

DescriptiveStats descriptive(std::span<const double> sample);

//! exp(mean(ln(p_i + epsilon))).  epsilon > 0 keeps zero probabilities from
//! annihilating the mean.  Throws AnalysisError on empty input.
double geometric_mean_smoothed(std::span<const double> p, double epsilon);

struct TwoSampleResult {
  double statistic = 0.0;  // KS: D in [0,1]; permutation: Z
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  // Extra context filled by permutation_test only:
  double observed_diff = 0.0;  // |mean(a) - mean(b)|
  bool exact = false;          // exhaustive enumeration used
  std::size_t n_draws = 0;     // permutations actually evaluated
};

//! Two-sample Kolmogorov-Smirnov: D = sup |CDF_a - CDF_b| with the p-value
//! from the asymptotic Kolmogorov distribution at effective sample size
//! n1*n2/(n1+n2).
TwoSampleResult ks_two_sample(std::span<const double> a, std::span<const double> b);

//! Two-sample permutation test with statistic |mean(a) - mean(b)|.
//! When the number of distinct group assignments is at most n_perm the test
//! enumerates all of them exactly (p = plain tail fraction); otherwise it
//! draws n_perm random permutations (p add-one smoothed).  Z-scores the
//! observed statistic against the permutation distribution.
//! Throws AnalysisError on empty input or a constant pooled sample.
TwoSampleResult permutation_test(std::span<const double> a,
                                 std::span<const double> b, std::size_t n_perm,
                                 std::uint64_t seed);
TwoSampleResult permutation_test_serial(std::span<const double> a,
                                        std::span<const double> b,
                                        std::size_t n_perm, std::uint64_t seed);

}  // namespace cqabuse::stats
