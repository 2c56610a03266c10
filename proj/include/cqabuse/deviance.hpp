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
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cqabuse/corpus.hpp"
#include "cqabuse/stats.hpp"

namespace cqabuse::deviance {

//! Ordinary least-squares line Y = alpha + beta * X.
struct RegressionModel {
  double alpha = 0.0;
  double beta = 0.0;
  double r_squared = 0.0;
  std::size_t n = 0;  // users the line was fit on
};

struct UserDeviance {
  std::string user_id;
  double question_deviance = 0.0;
  double answer_deviance = 0.0;
};

//! Per-user gap between valid flags received and the volume-predicted count.
//! A positive score means the user attracts more valid flags than their
//! activity level alone explains.
struct DevianceReport {
  RegressionModel question_model;
  RegressionModel answer_model;
  std::vector<UserDeviance> per_user;  // ascending user_id
};

//! Fit valid-flags-received against post count over users with at least one
//! post of `kind`.  Throws AnalysisError when fewer than two such users exist
//! or all their post counts coincide.
RegressionModel fit_flag_regression(const corpus::LedgerMap& ledgers,
                                    corpus::PostKind kind);

//! Score every user against the two fitted lines.  Users with zero posts of a
//! kind get deviance 0 for that kind (never-active users are not deviant by
//! intercept alone).
DevianceReport deviance_scores(const corpus::LedgerMap& ledgers,
                               const RegressionModel& question_model,
                               const RegressionModel& answer_model);

struct CorrelationEntry {
  std::string x_label;
  std::string y_label;
  double r = 0.0;
};

//! Pearson correlations between the six flag/activity count pairs that
//! motivate the volume-adjusted deviance score: received vs. received-valid
//! and reported vs. reported-valid for each post kind, plus post count vs.
//! valid flags received for each kind.
std::vector<CorrelationEntry> flag_activity_correlations(
    const corpus::LedgerMap& ledgers);

//! Distribution of n_flagged / n_posts over users with >= 1 post of `kind`.
//! Throws AnalysisError when no user qualifies.
stats::EmpiricalDistribution flagged_fraction_distribution(
    const corpus::LedgerMap& ledgers, corpus::PostKind kind);

struct CurvePoint {
  double percent = 0.0;      // top-x% cutoff
  double probability = 0.0;  // fraction of that slice that is suspended
};

//! P(suspended | user ranks in the top x% by score), for each requested x.
//! Ranking is score-descending with ties broken by ascending user_id; the
//! slice size is max(1, floor(n*x/100)).  Throws AnalysisError on empty input.
std::vector<CurvePoint> suspension_probability_curve(
    const std::vector<std::pair<std::string, double>>& scores,
    const std::set<std::string>& suspended_users,
    const std::vector<double>& percents);

//! Polynomial OLS fit of degree `degree` (coeffs[k] multiplies X^k).
struct PolynomialFit {
  int degree = 1;
  std::vector<double> coefficients;
  double r_squared = 0.0;
  double adjusted_r_squared = 0.0;
  std::size_t n = 0;
};

struct ModelComparison {
  std::vector<PolynomialFit> fits;  // degrees 1..max_degree
  int best_degree = 1;              // highest adjusted r^2, lowest degree wins ties
};

//! Compare polynomial regressions of valid flags on post count for degrees
//! 1..max_degree; selection is by adjusted r^2.  Requires max_degree >= 1 and
//! at least max_degree + 2 qualifying users.
ModelComparison compare_regression_models(const corpus::LedgerMap& ledgers,
                                          corpus::PostKind kind, int max_degree);

}  // namespace cqabuse::deviance
