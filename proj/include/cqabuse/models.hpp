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
#include <string_view>
#include <vector>

#include "cqabuse/features.hpp"

namespace cqabuse::learn {

enum class Algo { naive_bayes, logistic, knn, gbt };

//! Parse an algorithm name; throws ConfigError listing the valid options.
Algo algo_from_name(std::string_view name);
std::string algo_name(Algo algo);

struct Hyperparams {
  // naive_bayes: variance floor as a fraction of the largest feature variance.
  double nb_var_smoothing = 1e-9;
  // logistic: AdaBoost-style reweighting rounds over a gradient-descent
  // cross-entropy fit (1 round = plain logistic regression).
  int logistic_rounds = 1;
  int logistic_iterations = 400;
  double logistic_learning_rate = 0.5;
  double logistic_tolerance = 1e-8;
  // knn on z-scored features.
  int knn_k = 15;
  // gbt: stagewise logistic-loss boosting with per-stage row subsampling.
  int gbt_trees = 200;
  int gbt_depth = 3;
  double gbt_learning_rate = 0.1;
  double gbt_subsample = 0.5;
};

void validate_hyperparams(const Hyperparams& hp);

//! z-scoring parameters captured from a model's own training data, so scaling
//! a raw feature by a positive constant never changes knn or logistic output.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> stddev;  // constant features stored as 1.0
};

struct NaiveBayesModel {
  std::array<double, 2> log_prior{};
  std::array<std::vector<double>, 2> feat_mean;  // [class][feature]
  std::array<std::vector<double>, 2> feat_var;
};

struct LogisticRound {
  std::vector<double> weights;
  double bias = 0.0;
  double alpha = 1.0;  // ensemble weight
};

struct LogisticModel {
  Standardizer standardizer;
  std::vector<LogisticRound> rounds;
};

struct KnnModel {
  Standardizer standardizer;
  int k = 15;
  std::vector<double> rows;  // row-major z-scored training matrix
  std::vector<int> labels;
};

//! Binary regression tree; feature < 0 marks a leaf carrying `value`.
struct TreeNode {
  std::int32_t feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;
};

struct Tree {
  std::vector<TreeNode> nodes;  // node 0 is the root

  double apply(std::span<const double> row) const {
    std::int32_t at = 0;
    while (nodes[static_cast<std::size_t>(at)].feature >= 0) {
      const TreeNode& nd = nodes[static_cast<std::size_t>(at)];
      at = row[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left
                                                                     : nd.right;
    }
    return nodes[static_cast<std::size_t>(at)].value;
  }
};

struct GbtModel {
  double initial_log_odds = 0.0;  // prior log-odds of the positive class
  double learning_rate = 0.1;
  double subsample = 0.5;
  int max_depth = 3;
  std::vector<Tree> trees;
  //! Training logistic loss after each accepted stage (element 0 = loss at
  //! the prior); non-increasing by construction.
  std::vector<double> staged_train_loss;
};

struct Model {
  Algo algo = Algo::gbt;
  std::vector<std::string> feature_names;
  NaiveBayesModel nb;
  LogisticModel logistic;
  KnnModel knn;
  GbtModel gbt;

  std::size_t width() const { return feature_names.size(); }
};

//! Fit `algo` on the dataset.  Throws TrainError when a class is empty or a
//! feature value is non-finite; hyperparameter range errors are ConfigError.
Model train(const LabeledDataset& data, Algo algo, const Hyperparams& hp,
            std::uint64_t seed);

struct Prediction {
  std::vector<int> labels;
  std::vector<double> prob_suspended;  // P(label = 1), in [0, 1]
};

//! Predict rows of a row-major matrix whose width must equal the model's
//! feature count (TrainError otherwise).
Prediction predict(const Model& model, std::span<const double> values,
                   std::size_t width);
Prediction predict(const Model& model, const LabeledDataset& data);

//! Versioned JSON round-trip for trained models.
std::string model_to_json_text(const Model& model);
Model model_from_json_text(const std::string& text);

}  // namespace cqabuse::learn
