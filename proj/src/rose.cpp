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

#include "cqabuse/rose.hpp"

#include <algorithm>
#include <cmath>

#include "cqabuse/errors.hpp"
#include "cqabuse/rng.hpp"
#include "cqabuse/stats.hpp"

namespace cqabuse::learn {

namespace {

//! Per-feature Silverman bandwidth over the minority rows.
std::vector<double> silverman_bandwidths(const LabeledDataset& data,
                                         const std::vector<std::size_t>& rows,
                                         double shrink) {
  const std::size_t w = data.width();
  std::vector<double> h(w, 0.0);
  if (rows.size() < 2 || shrink == 0.0) return h;
  const double n_factor =
      std::pow(static_cast<double>(rows.size()), -0.2);  // n^(-1/5)
  std::vector<double> column(rows.size());
  for (std::size_t j = 0; j < w; ++j) {
    double mean = 0.0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      column[k] = data.row(rows[k])[j];
      mean += column[k];
    }
    mean /= static_cast<double>(rows.size());
    double ss = 0.0;
    for (double v : column) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(rows.size() - 1));
    const stats::EmpiricalDistribution dist(column, stats::DistKind::cdf);
    const double iqr = dist.quantile(0.75) - dist.quantile(0.25);
    const double spread = std::min(sd, iqr / 1.34);
    h[j] = shrink * 0.9 * spread * n_factor;
  }
  return h;
}

}  // namespace

LabeledDataset rose_balance(const LabeledDataset& data, double target_ratio,
                            double shrink, std::uint64_t seed) {
  if (target_ratio <= 0.0 || target_ratio >= 1.0)
    throw TrainError("target_ratio must lie in (0, 1)");
  if (shrink < 0.0) throw TrainError("shrink must be non-negative");

  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < data.n_rows(); ++i)
    by_class[data.labels[i] == 1 ? 1 : 0].push_back(i);
  if (by_class[0].empty() || by_class[1].empty())
    throw TrainError("rose_balance needs both classes present");

  // Minority = smaller class; ties resolve to the positive class so the
  // outcome never depends on row order.
  const int minority = by_class[1].size() <= by_class[0].size() ? 1 : 0;
  const auto& min_rows = by_class[minority];
  const auto& maj_rows = by_class[1 - minority];

  const std::size_t n = data.n_rows();
  const std::size_t n_min_out = static_cast<std::size_t>(
      std::llround(target_ratio * static_cast<double>(n)));
  const std::size_t n_maj_out = n - n_min_out;
  if (n_maj_out > maj_rows.size())
    throw TrainError("target_ratio keeps more majority rows (" +
                     std::to_string(n_maj_out) + ") than exist (" +
                     std::to_string(maj_rows.size()) + ")");

  const std::vector<double> h = silverman_bandwidths(data, min_rows, shrink);
  const std::size_t w = data.width();

  Rng rng(seed);
  LabeledDataset out;
  out.feature_names = data.feature_names;
  out.values.reserve(n * w);
  out.labels.reserve(n);

  // Over-sampled minority: smoothed bootstrap of existing minority rows.
  for (std::size_t k = 0; k < n_min_out; ++k) {
    const std::size_t src = min_rows[rng.uniform_int(min_rows.size())];
    const auto r = data.row(src);
    for (std::size_t j = 0; j < w; ++j) {
      double v = r[j];
      if (h[j] > 0.0) v += rng.normal(0.0, h[j]);
      out.values.push_back(v);
    }
    out.labels.push_back(minority);
  }

  // Under-sampled majority: uniform draw without replacement, input order.
  std::vector<std::size_t> picks = rng.sample_indices(maj_rows.size(), n_maj_out);
  std::sort(picks.begin(), picks.end());
  for (std::size_t p : picks) {
    const auto r = data.row(maj_rows[p]);
    out.values.insert(out.values.end(), r.begin(), r.end());
    out.labels.push_back(1 - minority);
  }

  refresh_standardization(out);
  return out;
}

}  // namespace cqabuse::learn
