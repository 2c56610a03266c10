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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cqabuse/features.hpp"
#include "cqabuse/models.hpp"

namespace cqabuse::learn {

//! Binary classification metrics, all expressed as percentages.  The
//! confusion matrix is indexed [predicted][actual] and column-normalized:
//! each actual-class column sums to 100 (when that class occurs).
struct EvalReport {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::array<std::array<double, 2>, 2> confusion{};
  std::size_t n = 0;
};

//! Score predictions against ground truth; `positive_class` selects which
//! label counts as the detection target.  Throws TrainError on length
//! mismatch or empty input.
EvalReport evaluate(std::span<const int> predicted, std::span<const int> actual,
                    int positive_class = 1);

struct SplitResult {
  LabeledDataset train;
  LabeledDataset test;
};

//! Stratified split: each class contributes test_fraction of its rows to the
//! test side (rounded), so the test class ratio matches the input.  Row order
//! within each side follows the input order.
SplitResult train_test_split(const LabeledDataset& data, double test_fraction,
                             std::uint64_t seed);

//! Element-wise mean and sample standard deviation of per-fold EvalReports.
struct CvReport {
  EvalReport mean;
  EvalReport stddev;
  int folds = 0;
  int repeats = 0;
};

//! Repeated stratified k-fold cross-validation.  When `balance` is set, each
//! training fold is rebalanced with rose_balance(0.5, rose_shrink) before
//! fitting; validation folds always keep their original class mix.
CvReport cross_validate(const LabeledDataset& data, Algo algo,
                        const Hyperparams& hp, int folds, int repeats,
                        std::uint64_t seed, bool balance = true,
                        double rose_shrink = 0.0);

struct FeatureImportance {
  std::string feature;
  int rank = 0;           // 1 = last survivor of backwards elimination
  double importance = 0;  // accuracy degradation when removed, max-scaled to 100
};

//! Cost controls for the O(width^2) elimination loop.
struct ImportanceConfig {
  int folds = 3;
  int repeats = 1;
  bool balance = true;
  double rose_shrink = 0.0;
};

//! Feature ranking via backwards elimination (repeatedly drop the feature
//! whose removal least degrades cross-validated accuracy) plus per-feature
//! importance = accuracy drop when only that feature is removed from the full
//! set, rescaled so the largest drop is 100.  Entries are returned rank 1
//! first.
std::vector<FeatureImportance> feature_importance(
    const LabeledDataset& data, Algo algo, const Hyperparams& hp,
    std::uint64_t seed, const ImportanceConfig& cfg = {});

}  // namespace cqabuse::learn
