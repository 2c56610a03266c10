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

#include "cqabuse/deviance.hpp"

#include <algorithm>
#include <cmath>

#include "cqabuse/errors.hpp"

namespace cqabuse::deviance {

namespace {

using corpus::LedgerMap;
using corpus::PostKind;
using corpus::UserLedger;

std::int64_t posts_of(const UserLedger& l, PostKind kind) {
  return kind == PostKind::question ? l.n_questions : l.n_answers;
}

std::int64_t valid_received(const UserLedger& l, PostKind kind) {
  return kind == PostKind::question ? l.q_flags_received_valid
                                    : l.a_flags_received_valid;
}

std::int64_t flagged_posts(const UserLedger& l, PostKind kind) {
  return kind == PostKind::question ? l.n_flagged_questions : l.n_flagged_answers;
}

const char* kind_name(PostKind kind) {
  return kind == PostKind::question ? "question" : "answer";
}

//! X (post counts) and Y (valid flags received) over users with >= 1 post.
void fit_population(const LedgerMap& ledgers, PostKind kind,
                    std::vector<double>& xs, std::vector<double>& ys) {
  xs.clear();
  ys.clear();
  for (const auto& [id, ledger] : ledgers) {
    const std::int64_t posts = posts_of(ledger, kind);
    if (posts < 1) continue;
    xs.push_back(static_cast<double>(posts));
    ys.push_back(static_cast<double>(valid_received(ledger, kind)));
  }
  if (xs.size() < 2)
    throw AnalysisError(std::string("flag regression needs at least 2 users with ") +
                        kind_name(kind) + " posts, have " +
                        std::to_string(xs.size()));
}

//! Solve the symmetric system A x = b in place via Gaussian elimination with
//! partial pivoting.  Sizes here are tiny (normal equations of a low-degree
//! polynomial), so numerics beyond pivoting are not a concern.
std::vector<double> solve_linear_system(std::vector<std::vector<double>> a,
                                        std::vector<double> b) {
  const std::size_t m = b.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < m; ++row)
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    if (std::abs(a[pivot][col]) < 1e-12)
      throw AnalysisError("degenerate design matrix in polynomial regression");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < m; ++row) {
      const double factor = a[row][col] / a[col][col];
      for (std::size_t k = col; k < m; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  std::vector<double> x(m, 0.0);
  for (std::size_t row = m; row-- > 0;) {
    double acc = b[row];
    for (std::size_t k = row + 1; k < m; ++k) acc -= a[row][k] * x[k];
    x[row] = acc / a[row][row];
  }
  return x;
}

PolynomialFit fit_polynomial(const std::vector<double>& xs,
                             const std::vector<double>& ys, int degree) {
  const std::size_t n = xs.size();
  const std::size_t terms = static_cast<std::size_t>(degree) + 1;
  // Normal equations: (V^T V) c = V^T y with Vandermonde V.
  std::vector<std::vector<double>> a(terms, std::vector<double>(terms, 0.0));
  std::vector<double> b(terms, 0.0);
  std::vector<double> powers(2 * terms - 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (std::size_t k = 0; k < powers.size(); ++k) {
      powers[k] += p;
      p *= xs[i];
    }
    p = 1.0;
    for (std::size_t k = 0; k < terms; ++k) {
      b[k] += p * ys[i];
      p *= xs[i];
    }
  }
  for (std::size_t r = 0; r < terms; ++r)
    for (std::size_t c = 0; c < terms; ++c) a[r][c] = powers[r + c];

  PolynomialFit fit;
  fit.degree = degree;
  fit.n = n;
  fit.coefficients = solve_linear_system(std::move(a), std::move(b));

  double y_mean = 0.0;
  for (double y : ys) y_mean += y;
  y_mean /= static_cast<double>(n);
  double sse = 0.0, sst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double pred = 0.0, p = 1.0;
    for (double c : fit.coefficients) {
      pred += c * p;
      p *= xs[i];
    }
    sse += (ys[i] - pred) * (ys[i] - pred);
    sst += (ys[i] - y_mean) * (ys[i] - y_mean);
  }
  fit.r_squared = sst > 0.0 ? std::max(0.0, 1.0 - sse / sst) : 1.0;
  const double dof = static_cast<double>(n) - static_cast<double>(degree) - 1.0;
  fit.adjusted_r_squared =
      1.0 - (1.0 - fit.r_squared) * (static_cast<double>(n) - 1.0) / dof;
  return fit;
}

}  // namespace

RegressionModel fit_flag_regression(const LedgerMap& ledgers, PostKind kind) {
  std::vector<double> xs, ys;
  fit_population(ledgers, kind, xs, ys);

  const double n = static_cast<double>(xs.size());
  double x_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x_mean += xs[i];
    y_mean += ys[i];
  }
  x_mean /= n;
  y_mean /= n;
  double sxx = 0.0, sxy = 0.0, sst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
    sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
    sst += (ys[i] - y_mean) * (ys[i] - y_mean);
  }
  if (sxx <= 0.0)
    throw AnalysisError(std::string("cannot fit ") + kind_name(kind) +
                        " flag regression: all post counts are equal");

  RegressionModel model;
  model.n = xs.size();
  model.beta = sxy / sxx;
  model.alpha = y_mean - model.beta * x_mean;
  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double resid = ys[i] - (model.alpha + model.beta * xs[i]);
    sse += resid * resid;
  }
  model.r_squared = sst > 0.0 ? std::max(0.0, 1.0 - sse / sst) : 1.0;
  return model;
}

DevianceReport deviance_scores(const LedgerMap& ledgers,
                               const RegressionModel& question_model,
                               const RegressionModel& answer_model) {
  DevianceReport report;
  report.question_model = question_model;
  report.answer_model = answer_model;
  report.per_user.reserve(ledgers.size());
  for (const auto& [id, ledger] : ledgers) {
    UserDeviance d;
    d.user_id = id;
    if (ledger.n_questions >= 1)
      d.question_deviance =
          static_cast<double>(ledger.q_flags_received_valid) -
          (question_model.alpha +
           question_model.beta * static_cast<double>(ledger.n_questions));
    if (ledger.n_answers >= 1)
      d.answer_deviance =
          static_cast<double>(ledger.a_flags_received_valid) -
          (answer_model.alpha +
           answer_model.beta * static_cast<double>(ledger.n_answers));
    report.per_user.push_back(std::move(d));
  }
  return report;
}

std::vector<CorrelationEntry> flag_activity_correlations(
    const LedgerMap& ledgers) {
  if (ledgers.size() < 2)
    throw AnalysisError("correlation table needs at least 2 users");

  struct Pair {
    const char* x;
    const char* y;
    std::int64_t (*fx)(const UserLedger&);
    std::int64_t (*fy)(const UserLedger&);
  };
  static const Pair kPairs[] = {
      {"q_flags_received", "q_flags_received_valid",
       [](const UserLedger& l) { return l.q_flags_received; },
       [](const UserLedger& l) { return l.q_flags_received_valid; }},
      {"a_flags_received", "a_flags_received_valid",
       [](const UserLedger& l) { return l.a_flags_received; },
       [](const UserLedger& l) { return l.a_flags_received_valid; }},
      {"q_flags_reported", "q_flags_reported_valid",
       [](const UserLedger& l) { return l.q_flags_reported; },
       [](const UserLedger& l) { return l.q_flags_reported_valid; }},
      {"a_flags_reported", "a_flags_reported_valid",
       [](const UserLedger& l) { return l.a_flags_reported; },
       [](const UserLedger& l) { return l.a_flags_reported_valid; }},
      {"n_questions", "q_flags_received_valid",
       [](const UserLedger& l) { return l.n_questions; },
       [](const UserLedger& l) { return l.q_flags_received_valid; }},
      {"n_answers", "a_flags_received_valid",
       [](const UserLedger& l) { return l.n_answers; },
       [](const UserLedger& l) { return l.a_flags_received_valid; }},
  };

  std::vector<CorrelationEntry> out;
  out.reserve(std::size(kPairs));
  std::vector<double> xs(ledgers.size()), ys(ledgers.size());
  for (const Pair& pair : kPairs) {
    std::size_t i = 0;
    for (const auto& [id, ledger] : ledgers) {
      xs[i] = static_cast<double>(pair.fx(ledger));
      ys[i] = static_cast<double>(pair.fy(ledger));
      ++i;
    }
    out.push_back({pair.x, pair.y, stats::pearson(xs, ys)});
  }
  return out;
}

stats::EmpiricalDistribution flagged_fraction_distribution(
    const LedgerMap& ledgers, PostKind kind) {
  std::vector<double> fractions;
  for (const auto& [id, ledger] : ledgers) {
    const std::int64_t posts = posts_of(ledger, kind);
    if (posts < 1) continue;
    fractions.push_back(static_cast<double>(flagged_posts(ledger, kind)) /
                        static_cast<double>(posts));
  }
  if (fractions.empty())
    throw AnalysisError(std::string("no users with ") + kind_name(kind) +
                        " posts for flagged-fraction distribution");
  return stats::EmpiricalDistribution(std::move(fractions), stats::DistKind::cdf);
}

std::vector<CurvePoint> suspension_probability_curve(
    const std::vector<std::pair<std::string, double>>& scores,
    const std::set<std::string>& suspended_users,
    const std::vector<double>& percents) {
  if (scores.empty())
    throw AnalysisError("suspension curve needs a nonempty score map");

  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a].second != scores[b].second)
      return scores[a].second > scores[b].second;
    return scores[a].first < scores[b].first;
  });
  std::vector<std::int64_t> suspended_prefix(order.size() + 1, 0);
  for (std::size_t i = 0; i < order.size(); ++i)
    suspended_prefix[i + 1] =
        suspended_prefix[i] +
        (suspended_users.count(scores[order[i]].first) ? 1 : 0);

  std::vector<CurvePoint> curve;
  curve.reserve(percents.size());
  const double n = static_cast<double>(scores.size());
  for (double x : percents) {
    if (x <= 0.0 || x > 100.0)
      throw AnalysisError("curve percentile must lie in (0, 100]");
    const std::size_t k = static_cast<std::size_t>(
        std::max<std::int64_t>(1, static_cast<std::int64_t>(n * x / 100.0)));
    curve.push_back({x, static_cast<double>(suspended_prefix[k]) /
                            static_cast<double>(k)});
  }
  return curve;
}

ModelComparison compare_regression_models(const LedgerMap& ledgers,
                                          PostKind kind, int max_degree) {
  if (max_degree < 1) throw ConfigError("max_degree must be at least 1");
  std::vector<double> xs, ys;
  fit_population(ledgers, kind, xs, ys);
  if (xs.size() < static_cast<std::size_t>(max_degree) + 2)
    throw AnalysisError("polynomial comparison of degree " +
                        std::to_string(max_degree) + " needs at least " +
                        std::to_string(max_degree + 2) + " users");

  ModelComparison cmp;
  cmp.fits.reserve(static_cast<std::size_t>(max_degree));
  for (int d = 1; d <= max_degree; ++d)
    cmp.fits.push_back(fit_polynomial(xs, ys, d));
  cmp.best_degree = 1;
  for (const PolynomialFit& fit : cmp.fits)
    if (fit.adjusted_r_squared >
        cmp.fits[static_cast<std::size_t>(cmp.best_degree - 1)].adjusted_r_squared)
      cmp.best_degree = fit.degree;
  return cmp;
}

}  // namespace cqabuse::deviance
