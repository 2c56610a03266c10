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

#include "cqabuse/evaluate.hpp"

#include <algorithm>
#include <cmath>

#include "cqabuse/errors.hpp"
#include "cqabuse/rng.hpp"
#include "cqabuse/rose.hpp"

namespace cqabuse::learn {

namespace {

LabeledDataset rows_subset(const LabeledDataset& data,
                           const std::vector<std::size_t>& rows) {
  LabeledDataset out;
  out.feature_names = data.feature_names;
  const std::size_t w = data.width();
  out.values.reserve(rows.size() * w);
  out.labels.reserve(rows.size());
  for (std::size_t i : rows) {
    const auto r = data.row(i);
    out.values.insert(out.values.end(), r.begin(), r.end());
    out.labels.push_back(data.labels[i]);
  }
  refresh_standardization(out);
  return out;
}

//! Mean and sample stddev over a list of reports, element-wise.
CvReport aggregate_reports(const std::vector<EvalReport>& reports) {
  CvReport agg;
  const double n = static_cast<double>(reports.size());
  auto stat = [&](auto member) {
    double m = 0.0;
    for (const EvalReport& r : reports) m += member(r);
    m /= n;
    double ss = 0.0;
    for (const EvalReport& r : reports) ss += (member(r) - m) * (member(r) - m);
    return std::pair<double, double>(
        m, reports.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0);
  };

  std::tie(agg.mean.accuracy, agg.stddev.accuracy) =
      stat([](const EvalReport& r) { return r.accuracy; });
  std::tie(agg.mean.precision, agg.stddev.precision) =
      stat([](const EvalReport& r) { return r.precision; });
  std::tie(agg.mean.recall, agg.stddev.recall) =
      stat([](const EvalReport& r) { return r.recall; });
  std::tie(agg.mean.f1, agg.stddev.f1) =
      stat([](const EvalReport& r) { return r.f1; });
  for (int p = 0; p < 2; ++p)
    for (int a = 0; a < 2; ++a) {
      auto cell = [p, a](const EvalReport& r) { return r.confusion[p][a]; };
      std::tie(agg.mean.confusion[p][a], agg.stddev.confusion[p][a]) =
          stat(cell);
    }
  for (const EvalReport& r : reports) agg.mean.n += r.n;
  return agg;
}

//! fold_of[row] in [0, folds): per-class shuffle then round-robin deal, so
//! every fold carries both classes in near-input proportion.
std::vector<int> stratified_folds(const std::vector<int>& labels, int folds,
                                  Rng& rng) {
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < labels.size(); ++i)
    by_class[labels[i] == 1 ? 1 : 0].push_back(i);
  std::vector<int> fold_of(labels.size(), 0);
  for (auto& rows : by_class) {
    rng.shuffle(rows);
    for (std::size_t k = 0; k < rows.size(); ++k)
      fold_of[rows[k]] = static_cast<int>(k % static_cast<std::size_t>(folds));
  }
  return fold_of;
}

double cv_accuracy(const LabeledDataset& data, Algo algo, const Hyperparams& hp,
                   int folds, int repeats, std::uint64_t seed, bool balance,
                   double rose_shrink) {
  const CvReport r = cross_validate(data, algo, hp, folds, repeats, seed,
                                    balance, rose_shrink);
  return r.mean.accuracy;
}

}  // namespace

EvalReport evaluate(std::span<const int> predicted, std::span<const int> actual,
                    int positive_class) {
  if (predicted.size() != actual.size())
    throw TrainError("evaluate: predicted and actual lengths differ");
  if (predicted.empty()) throw TrainError("evaluate: empty input");

  // counts[predicted-is-positive][actual-is-positive]
  std::size_t counts[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const int p = predicted[i] == positive_class ? 1 : 0;
    const int a = actual[i] == positive_class ? 1 : 0;
    ++counts[p][a];
  }
  const double tp = static_cast<double>(counts[1][1]);
  const double fp = static_cast<double>(counts[1][0]);
  const double fn = static_cast<double>(counts[0][1]);
  const double tn = static_cast<double>(counts[0][0]);
  const double n = tp + fp + fn + tn;

  EvalReport r;
  r.n = predicted.size();
  r.accuracy = 100.0 * (tp + tn) / n;
  r.precision = tp + fp > 0.0 ? 100.0 * tp / (tp + fp) : 0.0;
  r.recall = tp + fn > 0.0 ? 100.0 * tp / (tp + fn) : 0.0;
  r.f1 = r.precision + r.recall > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  // Column-normalize per actual class: indices here are 0 = negative class.
  const double actual_pos = tp + fn;
  const double actual_neg = fp + tn;
  r.confusion[0][0] = actual_neg > 0.0 ? 100.0 * tn / actual_neg : 0.0;
  r.confusion[1][0] = actual_neg > 0.0 ? 100.0 * fp / actual_neg : 0.0;
  r.confusion[0][1] = actual_pos > 0.0 ? 100.0 * fn / actual_pos : 0.0;
  r.confusion[1][1] = actual_pos > 0.0 ? 100.0 * tp / actual_pos : 0.0;
  return r;
}

SplitResult train_test_split(const LabeledDataset& data, double test_fraction,
                             std::uint64_t seed) {
  if (test_fraction <= 0.0 || test_fraction >= 1.0)
    throw TrainError("test_fraction must lie in (0, 1)");
  if (data.n_rows() < 2) throw TrainError("dataset too small to split");

  Rng rng(seed);
  std::vector<std::size_t> test_rows, train_rows;
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < data.n_rows(); ++i)
    by_class[data.labels[i] == 1 ? 1 : 0].push_back(i);
  for (auto& rows : by_class) {
    rng.shuffle(rows);
    const std::size_t n_test = static_cast<std::size_t>(
        std::llround(test_fraction * static_cast<double>(rows.size())));
    for (std::size_t k = 0; k < rows.size(); ++k)
      (k < n_test ? test_rows : train_rows).push_back(rows[k]);
  }
  std::sort(test_rows.begin(), test_rows.end());
  std::sort(train_rows.begin(), train_rows.end());

  SplitResult split;
  split.train = rows_subset(data, train_rows);
  split.test = rows_subset(data, test_rows);
  return split;
}

CvReport cross_validate(const LabeledDataset& data, Algo algo,
                        const Hyperparams& hp, int folds, int repeats,
                        std::uint64_t seed, bool balance, double rose_shrink) {
  if (folds < 2) throw TrainError("cross-validation needs at least 2 folds");
  if (repeats < 1) throw TrainError("cross-validation needs at least 1 repeat");
  if (data.n_rows() < static_cast<std::size_t>(folds))
    throw TrainError("dataset smaller than the fold count");

  Rng root(seed);
  std::vector<EvalReport> reports;
  reports.reserve(static_cast<std::size_t>(folds) *
                  static_cast<std::size_t>(repeats));
  for (int rep = 0; rep < repeats; ++rep) {
    Rng rep_rng = root.fork(static_cast<std::uint64_t>(rep) + 1);
    const std::vector<int> fold_of = stratified_folds(data.labels, folds, rep_rng);
    for (int f = 0; f < folds; ++f) {
      std::vector<std::size_t> train_rows, val_rows;
      for (std::size_t i = 0; i < data.n_rows(); ++i)
        (fold_of[i] == f ? val_rows : train_rows).push_back(i);
      if (val_rows.empty()) continue;

      LabeledDataset train_part = rows_subset(data, train_rows);
      const std::uint64_t stage_seed = rep_rng.next_u64();
      if (balance)
        train_part = rose_balance(train_part, 0.5, rose_shrink, stage_seed);
      const Model model = train(train_part, algo, hp, stage_seed);

      const LabeledDataset val_part = rows_subset(data, val_rows);
      const Prediction pred = predict(model, val_part);
      reports.push_back(evaluate(pred.labels, val_part.labels));
    }
  }
  if (reports.empty()) throw TrainError("cross-validation produced no folds");
  CvReport agg = aggregate_reports(reports);
  agg.folds = folds;
  agg.repeats = repeats;
  return agg;
}

std::vector<FeatureImportance> feature_importance(
    const LabeledDataset& data, Algo algo, const Hyperparams& hp,
    std::uint64_t seed, const ImportanceConfig& cfg) {
  const std::size_t w = data.width();
  if (w < 2) throw TrainError("feature importance needs at least 2 features");

  auto run_cv = [&](const LabeledDataset& d) {
    return cv_accuracy(d, algo, hp, cfg.folds, cfg.repeats, seed, cfg.balance,
                       cfg.rose_shrink);
  };

  // Importance values: accuracy drop when each feature alone is removed from
  // the full set.
  const double base = run_cv(data);
  std::vector<double> degradation(w, 0.0);
  for (std::size_t j = 0; j < w; ++j) {
    std::vector<std::size_t> keep;
    keep.reserve(w - 1);
    for (std::size_t k = 0; k < w; ++k)
      if (k != j) keep.push_back(k);
    degradation[j] = std::max(0.0, base - run_cv(select_features(data, keep)));
  }
  const double max_deg = *std::max_element(degradation.begin(), degradation.end());

  // Ranks: backwards elimination drops the least-useful feature first.
  std::vector<std::size_t> remaining(w);
  for (std::size_t j = 0; j < w; ++j) remaining[j] = j;
  std::vector<int> rank(w, 0);
  int next_rank = static_cast<int>(w);  // dropped first = least important
  while (remaining.size() > 1) {
    double best_acc = -1.0;
    std::size_t drop_pos = 0;
    for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
      std::vector<std::size_t> keep;
      keep.reserve(remaining.size() - 1);
      for (std::size_t k = 0; k < remaining.size(); ++k)
        if (k != pos) keep.push_back(remaining[k]);
      const double acc = run_cv(select_features(data, keep));
      if (acc > best_acc) {  // ties keep the earliest candidate = lowest index
        best_acc = acc;
        drop_pos = pos;
      }
    }
    rank[remaining[drop_pos]] = next_rank--;
    remaining.erase(remaining.begin() +
                    static_cast<std::ptrdiff_t>(drop_pos));
  }
  rank[remaining[0]] = 1;

  std::vector<FeatureImportance> out(w);
  for (std::size_t j = 0; j < w; ++j) {
    out[j].feature = data.feature_names[j];
    out[j].rank = rank[j];
    out[j].importance = max_deg > 0.0 ? 100.0 * degradation[j] / max_deg : 0.0;
  }
  std::sort(out.begin(), out.end(),
            [](const FeatureImportance& a, const FeatureImportance& b) {
              return a.rank < b.rank;
            });
  return out;
}

}  // namespace cqabuse::learn
