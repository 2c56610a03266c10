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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cqabuse/corpus.hpp"
#include "cqabuse/deviance.hpp"
#include "cqabuse/graph.hpp"

namespace cqabuse::learn {

//! Number of per-user features; the order returned by feature_names() is
//! fixed and part of the dataset/model interchange format.
inline constexpr std::size_t kFeatureCount = 29;

//! The 29 feature names, in column order.
const std::vector<std::string>& feature_names();

//! Parallel array: coarse category per feature (social, activity,
//! accomplishment, flag, deviance_score, deviance_homophily).
const std::vector<std::string>& feature_categories();

//! 2*answers + 10*best_answers - 5*questions: net contribution minus takeaway.
double altruistic_score(const corpus::UserLedger& ledger);

//! Per-user feature rows, user ids ascending; values row-major with width
//! kFeatureCount.
struct FeatureMatrix {
  std::vector<std::string> user_ids;
  std::vector<double> values;

  std::size_t n_rows() const { return user_ids.size(); }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * kFeatureCount, kFeatureCount};
  }
  std::optional<std::size_t> index_of(std::string_view user_id) const;
};

//! Compute every user's feature vector from the corpus aggregates, the fitted
//! deviance report, and the follow graph.  Throws AnalysisError when a ledger
//! user is missing from the graph or the deviance report.
FeatureMatrix extract_features(const corpus::EventCorpus& corpus,
                               const corpus::LedgerMap& ledgers,
                               const deviance::DevianceReport& report,
                               const DirectedGraph& ff);

//! Feature rows plus binary labels (0 = fair, 1 = suspended).  Width is not
//! fixed to kFeatureCount: feature-selection steps produce narrower copies.
struct LabeledDataset {
  std::vector<std::string> feature_names;
  std::vector<double> values;  // row-major, n_rows x width
  std::vector<int> labels;
  std::vector<double> mean;    // per-feature standardization parameters
  std::vector<double> stddev;  // sample stddev; 0 for constant features

  std::size_t width() const { return feature_names.size(); }
  std::size_t n_rows() const { return labels.size(); }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * width(), width()};
  }
};

//! Recompute the per-feature mean / sample-stddev columns.
void refresh_standardization(LabeledDataset& data);

//! Pair the feature matrix with suspension labels from the user table.
LabeledDataset build_labeled_dataset(const FeatureMatrix& features,
                                     const corpus::EventCorpus& corpus);

//! Copy of `data` keeping only the listed feature columns (indices into the
//! current width, ascending unique).
LabeledDataset select_features(const LabeledDataset& data,
                               const std::vector<std::size_t>& keep);

//! CSV interchange: feature columns in order, then a final `label` column.
std::string dataset_to_csv(const LabeledDataset& data);
LabeledDataset dataset_from_csv(const std::string& text);

}  // namespace cqabuse::learn
