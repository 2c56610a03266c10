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

#include "cqabuse/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "cqabuse/errors.hpp"
#include "cqabuse/rng.hpp"

namespace cqabuse::learn {

namespace {

using nlohmann::ordered_json;

constexpr double kProbClip = 1e-12;
constexpr double kLeafClip = 4.0;       // bound on a single tree's log-odds step
constexpr double kMinSplitGain = 1e-12;
constexpr double kMaxAlpha = 10.0;      // boosting-round weight cap
constexpr int kMaxHalvings = 10;        // step backtracking before a stage is dropped

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

//! ln(1 + e^z) without overflow.
double softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

void check_trainable(const LabeledDataset& data) {
  if (data.n_rows() < 2) throw TrainError("training data needs at least 2 rows");
  bool has[2] = {false, false};
  for (int label : data.labels) has[label == 1 ? 1 : 0] = true;
  if (!has[0] || !has[1])
    throw TrainError("training data must contain both classes");
  for (std::size_t i = 0; i < data.values.size(); ++i)
    if (!std::isfinite(data.values[i]))
      throw TrainError("non-finite feature value at row " +
                       std::to_string(i / data.width()) + ", column " +
                       std::to_string(i % data.width()));
}

Standardizer make_standardizer(const LabeledDataset& data) {
  const std::size_t w = data.width();
  const std::size_t n = data.n_rows();
  Standardizer s;
  s.mean.assign(w, 0.0);
  s.stddev.assign(w, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = data.row(i);
    for (std::size_t j = 0; j < w; ++j) s.mean[j] += r[j];
  }
  for (std::size_t j = 0; j < w; ++j) s.mean[j] /= static_cast<double>(n);
  if (n < 2) return s;
  std::vector<double> ss(w, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = data.row(i);
    for (std::size_t j = 0; j < w; ++j) {
      const double d = r[j] - s.mean[j];
      ss[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < w; ++j) {
    const double sd = std::sqrt(ss[j] / static_cast<double>(n - 1));
    s.stddev[j] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

std::vector<double> standardize_matrix(const Standardizer& s,
                                       std::span<const double> values,
                                       std::size_t width) {
  std::vector<double> z(values.size());
  const std::size_t n = values.size() / width;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < width; ++j)
      z[i * width + j] =
          (values[i * width + j] - s.mean[j]) / s.stddev[j];
  return z;
}

// --------------------------------------------------------------------------
// Naive Bayes
// --------------------------------------------------------------------------

NaiveBayesModel train_naive_bayes(const LabeledDataset& data,
                                  const Hyperparams& hp) {
  const std::size_t w = data.width();
  const std::size_t n = data.n_rows();

  // Variance floor proportional to the largest overall feature variance, so
  // constant features cannot produce singular likelihoods.
  std::vector<double> overall_mean(w, 0.0), overall_var(w, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = data.row(i);
    for (std::size_t j = 0; j < w; ++j) overall_mean[j] += r[j];
  }
  for (std::size_t j = 0; j < w; ++j) overall_mean[j] /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = data.row(i);
    for (std::size_t j = 0; j < w; ++j) {
      const double d = r[j] - overall_mean[j];
      overall_var[j] += d * d / static_cast<double>(n);
    }
  }
  const double max_var = *std::max_element(overall_var.begin(), overall_var.end());
  const double epsilon = std::max(hp.nb_var_smoothing * max_var, 1e-12);

  NaiveBayesModel nb;
  std::size_t counts[2] = {0, 0};
  for (int c = 0; c < 2; ++c) {
    nb.feat_mean[c].assign(w, 0.0);
    nb.feat_var[c].assign(w, 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int c = data.labels[i] == 1 ? 1 : 0;
    ++counts[c];
    const auto r = data.row(i);
    for (std::size_t j = 0; j < w; ++j) nb.feat_mean[c][j] += r[j];
  }
  for (int c = 0; c < 2; ++c)
    for (std::size_t j = 0; j < w; ++j)
      nb.feat_mean[c][j] /= static_cast<double>(counts[c]);
  for (std::size_t i = 0; i < n; ++i) {
    const int c = data.labels[i] == 1 ? 1 : 0;
    const auto r = data.row(i);
    for (std::size_t j = 0; j < w; ++j) {
      const double d = r[j] - nb.feat_mean[c][j];
      nb.feat_var[c][j] += d * d / static_cast<double>(counts[c]);
    }
  }
  for (int c = 0; c < 2; ++c) {
    nb.log_prior[c] = std::log(static_cast<double>(counts[c]) /
                               static_cast<double>(n));
    for (std::size_t j = 0; j < w; ++j) nb.feat_var[c][j] += epsilon;
  }
  return nb;
}

double nb_prob_positive(const NaiveBayesModel& nb, std::span<const double> row) {
  double ll[2];
  for (int c = 0; c < 2; ++c) {
    ll[c] = nb.log_prior[c];
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double var = nb.feat_var[c][j];
      const double d = row[j] - nb.feat_mean[c][j];
      ll[c] += -0.5 * std::log(2.0 * M_PI * var) - d * d / (2.0 * var);
    }
  }
  return sigmoid(ll[1] - ll[0]);
}

// --------------------------------------------------------------------------
// Logistic regression with optional AdaBoost-style reweighting rounds
// --------------------------------------------------------------------------

LogisticRound fit_weighted_logistic(const std::vector<double>& z,
                                    std::size_t w,
                                    const std::vector<int>& labels,
                                    const std::vector<double>& sample_weight,
                                    const Hyperparams& hp) {
  const std::size_t n = labels.size();
  LogisticRound round;
  round.weights.assign(w, 0.0);
  std::vector<double> grad(w, 0.0);
  for (int it = 0; it < hp.logistic_iterations; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double* zi = z.data() + i * w;
      double margin = round.bias;
      for (std::size_t j = 0; j < w; ++j) margin += round.weights[j] * zi[j];
      const double err =
          sample_weight[i] * (sigmoid(margin) - (labels[i] == 1 ? 1.0 : 0.0));
      for (std::size_t j = 0; j < w; ++j) grad[j] += err * zi[j];
      grad_b += err;
    }
    double max_grad = std::abs(grad_b);
    for (std::size_t j = 0; j < w; ++j) {
      round.weights[j] -= hp.logistic_learning_rate * grad[j];
      max_grad = std::max(max_grad, std::abs(grad[j]));
    }
    round.bias -= hp.logistic_learning_rate * grad_b;
    if (max_grad < hp.logistic_tolerance) break;
  }
  return round;
}

LogisticModel train_logistic(const LabeledDataset& data, const Hyperparams& hp) {
  const std::size_t w = data.width();
  const std::size_t n = data.n_rows();
  LogisticModel model;
  model.standardizer = make_standardizer(data);
  const std::vector<double> z =
      standardize_matrix(model.standardizer, data.values, w);

  std::vector<double> sample_weight(n, 1.0 / static_cast<double>(n));
  for (int r = 0; r < hp.logistic_rounds; ++r) {
    LogisticRound round = fit_weighted_logistic(z, w, data.labels,
                                                sample_weight, hp);
    // Weighted 0/1 error of this round's classifier.
    double err = 0.0;
    std::vector<char> wrong(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* zi = z.data() + i * w;
      double margin = round.bias;
      for (std::size_t j = 0; j < w; ++j) margin += round.weights[j] * zi[j];
      const int pred = margin > 0.0 ? 1 : 0;
      if (pred != data.labels[i]) {
        wrong[i] = 1;
        err += sample_weight[i];
      }
    }
    const double bounded = std::clamp(err, 1e-9, 1.0 - 1e-9);
    double alpha = 0.5 * std::log((1.0 - bounded) / bounded);
    if (r == 0) {
      // Always keep the first round so a single-round fit is plain logistic
      // regression regardless of its training error.
      round.alpha = std::clamp(alpha, 1e-3, kMaxAlpha);
      model.rounds.push_back(std::move(round));
    } else if (alpha > 0.0) {
      round.alpha = std::min(alpha, kMaxAlpha);
      model.rounds.push_back(std::move(round));
    } else {
      break;  // no better than chance on the reweighted sample
    }
    if (err < 1e-9) break;  // perfect fit, later rounds would be degenerate
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sample_weight[i] *= std::exp(wrong[i] ? alpha : -alpha);
      total += sample_weight[i];
    }
    for (double& sw : sample_weight) sw /= total;
  }
  return model;
}

double logistic_prob_positive(const LogisticModel& m,
                              std::span<const double> row) {
  // Combine rounds on the logit scale, weighted by the boosting alphas.
  double combined = 0.0, total_alpha = 0.0;
  std::vector<double> z(row.size());
  for (std::size_t j = 0; j < row.size(); ++j)
    z[j] = (row[j] - m.standardizer.mean[j]) / m.standardizer.stddev[j];
  for (const LogisticRound& r : m.rounds) {
    double margin = r.bias;
    for (std::size_t j = 0; j < z.size(); ++j) margin += r.weights[j] * z[j];
    combined += r.alpha * margin;
    total_alpha += r.alpha;
  }
  return sigmoid(total_alpha > 0.0 ? combined / total_alpha : 0.0);
}

// --------------------------------------------------------------------------
// K-nearest neighbors
// --------------------------------------------------------------------------

KnnModel train_knn(const LabeledDataset& data, const Hyperparams& hp) {
  KnnModel m;
  m.standardizer = make_standardizer(data);
  m.k = std::min<int>(hp.knn_k, static_cast<int>(data.n_rows()));
  m.rows = standardize_matrix(m.standardizer, data.values, data.width());
  m.labels = data.labels;
  return m;
}

double knn_prob_positive(const KnnModel& m, std::span<const double> row) {
  const std::size_t w = m.standardizer.mean.size();
  const std::size_t n = m.labels.size();
  std::vector<double> z(w);
  for (std::size_t j = 0; j < w; ++j)
    z[j] = (row[j] - m.standardizer.mean[j]) / m.standardizer.stddev[j];

  std::vector<std::pair<double, std::uint32_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* ri = m.rows.data() + i * w;
    double d2 = 0.0;
    for (std::size_t j = 0; j < w; ++j) {
      const double d = z[j] - ri[j];
      d2 += d * d;
    }
    dist[i] = {d2, static_cast<std::uint32_t>(i)};
  }
  const std::size_t k =
      std::clamp<std::size_t>(static_cast<std::size_t>(m.k), 1, n);
  std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
  // Deterministic neighbor set: equal distances break by training row index.
  std::sort(dist.begin(), dist.begin() + k);
  std::size_t positive = 0;
  for (std::size_t i = 0; i < k; ++i)
    if (m.labels[dist[i].second] == 1) ++positive;
  return static_cast<double>(positive) / static_cast<double>(k);
}

// --------------------------------------------------------------------------
// Gradient-boosted trees (logistic loss, stochastic row subsampling)
// --------------------------------------------------------------------------

struct SplitChoice {
  double gain = 0.0;
  std::int32_t feature = -1;
  double threshold = 0.0;
};

//! Least-squares regression tree over the subsampled rows, grown level-wise.
//! The split search is parallel over features; candidate merging is serial in
//! feature order, so results never depend on thread count.
Tree fit_tree(const LabeledDataset& data, const std::vector<std::size_t>& sub,
              const std::vector<double>& grad, const std::vector<double>& hess,
              int max_depth) {
  const std::size_t w = data.width();
  const std::size_t m = sub.size();

  // Presorted row order per feature (local indices, ties by index).
  std::vector<std::uint32_t> order(w * m);
  std::vector<double> column(w * m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto r = data.row(sub[i]);
    for (std::size_t j = 0; j < w; ++j) column[j * m + i] = r[j];
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(w); ++j) {
    std::uint32_t* o = order.data() + static_cast<std::size_t>(j) * m;
    const double* col = column.data() + static_cast<std::size_t>(j) * m;
    for (std::size_t i = 0; i < m; ++i) o[i] = static_cast<std::uint32_t>(i);
    std::sort(o, o + m, [col](std::uint32_t a, std::uint32_t b) {
      if (col[a] != col[b]) return col[a] < col[b];
      return a < b;
    });
  }

  struct NodeStat {
    double sum_g = 0.0;
    double sum_h = 0.0;
    std::size_t count = 0;
  };

  Tree tree;
  tree.nodes.emplace_back();
  std::vector<NodeStat> stats(1);
  for (std::size_t i = 0; i < m; ++i) {
    stats[0].sum_g += grad[i];
    stats[0].sum_h += hess[i];
    ++stats[0].count;
  }
  std::vector<std::int32_t> node_of(m, 0);
  std::vector<std::int32_t> active{0};

  auto finalize_leaf = [&](std::int32_t id) {
    TreeNode& nd = tree.nodes[static_cast<std::size_t>(id)];
    nd.feature = -1;
    const double denom = std::max(stats[static_cast<std::size_t>(id)].sum_h, 1e-12);
    nd.value = std::clamp(stats[static_cast<std::size_t>(id)].sum_g / denom,
                          -kLeafClip, kLeafClip);
  };

  for (int level = 0; level < max_depth && !active.empty(); ++level) {
    const std::size_t a = active.size();
    std::vector<std::int32_t> slot(tree.nodes.size(), -1);
    for (std::size_t s = 0; s < a; ++s)
      slot[static_cast<std::size_t>(active[s])] = static_cast<std::int32_t>(s);

    std::vector<SplitChoice> per_feature(w * a);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t jj = 0; jj < static_cast<std::int64_t>(w); ++jj) {
      const std::size_t j = static_cast<std::size_t>(jj);
      const std::uint32_t* o = order.data() + j * m;
      const double* col = column.data() + j * m;
      std::vector<double> run_g(a, 0.0);
      std::vector<std::size_t> run_c(a, 0);
      std::vector<double> last_v(a, 0.0);
      std::vector<char> seen(a, 0);
      for (std::size_t pos = 0; pos < m; ++pos) {
        const std::uint32_t local = o[pos];
        const std::int32_t id = node_of[local];
        if (id < 0) continue;
        const std::int32_t s = slot[static_cast<std::size_t>(id)];
        if (s < 0) continue;
        const double v = col[local];
        const NodeStat& ns = stats[static_cast<std::size_t>(id)];
        const std::size_t si = static_cast<std::size_t>(s);
        if (seen[si] && v != last_v[si] && run_c[si] >= 1 &&
            ns.count - run_c[si] >= 1) {
          const double gl = run_g[si];
          const double gr = ns.sum_g - gl;
          const double cl = static_cast<double>(run_c[si]);
          const double cr = static_cast<double>(ns.count - run_c[si]);
          const double gain = gl * gl / cl + gr * gr / cr -
                              ns.sum_g * ns.sum_g / static_cast<double>(ns.count);
          SplitChoice& best = per_feature[j * a + si];
          if (gain > best.gain) {
            best.gain = gain;
            best.feature = static_cast<std::int32_t>(j);
            best.threshold = (last_v[si] + v) / 2.0;
          }
        }
        run_g[si] += grad[local];
        ++run_c[si];
        last_v[si] = v;
        seen[si] = 1;
      }
    }

    // Serial merge, ascending feature order: ties keep the lowest feature.
    std::vector<SplitChoice> best(a);
    for (std::size_t j = 0; j < w; ++j)
      for (std::size_t s = 0; s < a; ++s)
        if (per_feature[j * a + s].gain > best[s].gain) best[s] = per_feature[j * a + s];

    std::vector<std::int32_t> next_active;
    for (std::size_t s = 0; s < a; ++s) {
      const std::int32_t id = active[s];
      if (best[s].feature < 0 || best[s].gain <= kMinSplitGain) {
        finalize_leaf(id);
        continue;
      }
      TreeNode& nd = tree.nodes[static_cast<std::size_t>(id)];
      nd.feature = best[s].feature;
      nd.threshold = best[s].threshold;
      nd.left = static_cast<std::int32_t>(tree.nodes.size());
      nd.right = nd.left + 1;
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      stats.emplace_back();
      stats.emplace_back();
      next_active.push_back(nd.left);
      next_active.push_back(nd.right);
    }

    // Re-home rows and accumulate child stats.
    for (std::size_t i = 0; i < m; ++i) {
      const std::int32_t id = node_of[i];
      if (id < 0) continue;
      const TreeNode& nd = tree.nodes[static_cast<std::size_t>(id)];
      if (nd.feature < 0) {
        node_of[i] = -1;  // settled in a leaf
        continue;
      }
      const double v = column[static_cast<std::size_t>(nd.feature) * m + i];
      const std::int32_t child = v <= nd.threshold ? nd.left : nd.right;
      node_of[i] = child;
      NodeStat& cs = stats[static_cast<std::size_t>(child)];
      cs.sum_g += grad[i];
      cs.sum_h += hess[i];
      ++cs.count;
    }
    active = std::move(next_active);
  }
  for (std::int32_t id : active) finalize_leaf(id);
  return tree;
}

GbtModel train_gbt(const LabeledDataset& data, const Hyperparams& hp,
                   std::uint64_t seed) {
  const std::size_t n = data.n_rows();
  GbtModel model;
  model.learning_rate = hp.gbt_learning_rate;
  model.subsample = hp.gbt_subsample;
  model.max_depth = hp.gbt_depth;

  double positive = 0.0;
  for (int label : data.labels) positive += label == 1 ? 1.0 : 0.0;
  const double prior =
      std::clamp(positive / static_cast<double>(n), kProbClip, 1.0 - kProbClip);
  model.initial_log_odds = std::log(prior / (1.0 - prior));

  std::vector<double> score(n, model.initial_log_odds);
  auto loss_of = [&](const std::vector<double>& f) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      total += softplus(f[i]) - (data.labels[i] == 1 ? f[i] : 0.0);
    return total / static_cast<double>(n);
  };
  double loss = loss_of(score);
  model.staged_train_loss.push_back(loss);

  const std::size_t sub_size = std::max<std::size_t>(
      2, static_cast<std::size_t>(
             std::llround(hp.gbt_subsample * static_cast<double>(n))));

  Rng root(seed);
  std::vector<double> grad, hess, trial(n);
  for (int stage = 1; stage <= hp.gbt_trees; ++stage) {
    Rng rng = root.fork(static_cast<std::uint64_t>(stage));
    std::vector<std::size_t> sub =
        rng.sample_indices(n, std::min(sub_size, n));
    std::sort(sub.begin(), sub.end());

    grad.resize(sub.size());
    hess.resize(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) {
      const double p = sigmoid(score[sub[i]]);
      grad[i] = (data.labels[sub[i]] == 1 ? 1.0 : 0.0) - p;
      hess[i] = std::max(p * (1.0 - p), 1e-12);
    }

    Tree tree = fit_tree(data, sub, grad, hess, hp.gbt_depth);

    // Backtrack the stage until the full-sample training loss is
    // non-increasing; drop the stage if halving cannot fix it.
    std::vector<double> step(n);
    for (std::size_t i = 0; i < n; ++i)
      step[i] = hp.gbt_learning_rate * tree.apply(data.row(i));
    double scale = 1.0;
    double trial_loss = std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = score[i] + scale * step[i];
      trial_loss = loss_of(trial);
      if (trial_loss <= loss) {
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) continue;
    if (scale != 1.0)
      for (TreeNode& nd : tree.nodes)
        if (nd.feature < 0) nd.value *= scale;
    score = trial;
    loss = trial_loss;
    model.trees.push_back(std::move(tree));
    model.staged_train_loss.push_back(loss);
  }
  return model;
}

double gbt_prob_positive(const GbtModel& m, std::span<const double> row) {
  double f = m.initial_log_odds;
  for (const Tree& t : m.trees) f += m.learning_rate * t.apply(row);
  return sigmoid(f);
}

}  // namespace

Algo algo_from_name(std::string_view name) {
  if (name == "naive_bayes") return Algo::naive_bayes;
  if (name == "logistic") return Algo::logistic;
  if (name == "knn") return Algo::knn;
  if (name == "gbt") return Algo::gbt;
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (valid: naive_bayes, logistic, knn, gbt)");
}

std::string algo_name(Algo algo) {
  switch (algo) {
    case Algo::naive_bayes: return "naive_bayes";
    case Algo::logistic: return "logistic";
    case Algo::knn: return "knn";
    case Algo::gbt: return "gbt";
  }
  throw ConfigError("invalid algorithm value");
}

void validate_hyperparams(const Hyperparams& hp) {
  if (hp.nb_var_smoothing < 0.0)
    throw ConfigError("nb_var_smoothing must be non-negative");
  if (hp.logistic_rounds < 1) throw ConfigError("logistic_rounds must be >= 1");
  if (hp.logistic_iterations < 1)
    throw ConfigError("logistic_iterations must be >= 1");
  if (hp.logistic_learning_rate <= 0.0)
    throw ConfigError("logistic_learning_rate must be positive");
  if (hp.logistic_tolerance < 0.0)
    throw ConfigError("logistic_tolerance must be non-negative");
  if (hp.knn_k < 1) throw ConfigError("knn_k must be >= 1");
  if (hp.gbt_trees < 0) throw ConfigError("gbt_trees must be >= 0");
  if (hp.gbt_depth < 1) throw ConfigError("gbt_depth must be >= 1");
  if (hp.gbt_learning_rate <= 0.0)
    throw ConfigError("gbt_learning_rate must be positive");
  if (hp.gbt_subsample <= 0.0 || hp.gbt_subsample > 1.0)
    throw ConfigError("gbt_subsample must lie in (0, 1]");
}

Model train(const LabeledDataset& data, Algo algo, const Hyperparams& hp,
            std::uint64_t seed) {
  validate_hyperparams(hp);
  check_trainable(data);
  Model model;
  model.algo = algo;
  model.feature_names = data.feature_names;
  switch (algo) {
    case Algo::naive_bayes: model.nb = train_naive_bayes(data, hp); break;
    case Algo::logistic: model.logistic = train_logistic(data, hp); break;
    case Algo::knn: model.knn = train_knn(data, hp); break;
    case Algo::gbt: model.gbt = train_gbt(data, hp, seed); break;
  }
  return model;
}

Prediction predict(const Model& model, std::span<const double> values,
                   std::size_t width) {
  if (width != model.width())
    throw TrainError("feature arity mismatch: model expects " +
                     std::to_string(model.width()) + " features, got " +
                     std::to_string(width));
  if (width == 0 || values.size() % width != 0)
    throw TrainError("prediction matrix size is not a multiple of the width");
  const std::size_t n = values.size() / width;
  Prediction out;
  out.labels.resize(n);
  out.prob_suspended.resize(n);

#pragma omp parallel for schedule(static)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    const std::span<const double> row = values.subspan(i * width, width);
    double p = 0.0;
    switch (model.algo) {
      case Algo::naive_bayes: p = nb_prob_positive(model.nb, row); break;
      case Algo::logistic: p = logistic_prob_positive(model.logistic, row); break;
      case Algo::knn: p = knn_prob_positive(model.knn, row); break;
      case Algo::gbt: p = gbt_prob_positive(model.gbt, row); break;
    }
    out.prob_suspended[i] = p;
    out.labels[i] = p > 0.5 ? 1 : 0;
  }
  return out;
}

Prediction predict(const Model& model, const LabeledDataset& data) {
  return predict(model, data.values, data.width());
}

namespace {

ordered_json standardizer_to_json(const Standardizer& s) {
  return ordered_json{{"mean", s.mean}, {"stddev", s.stddev}};
}

Standardizer standardizer_from_json(const nlohmann::json& j) {
  Standardizer s;
  s.mean = j.at("mean").get<std::vector<double>>();
  s.stddev = j.at("stddev").get<std::vector<double>>();
  return s;
}

}  // namespace

std::string model_to_json_text(const Model& model) {
  ordered_json j;
  j["format_version"] = 1;
  j["algo"] = algo_name(model.algo);
  j["feature_names"] = model.feature_names;
  switch (model.algo) {
    case Algo::naive_bayes: {
      j["log_prior"] = model.nb.log_prior;
      j["mean"] = ordered_json::array(
          {model.nb.feat_mean[0], model.nb.feat_mean[1]});
      j["var"] =
          ordered_json::array({model.nb.feat_var[0], model.nb.feat_var[1]});
      break;
    }
    case Algo::logistic: {
      j["standardizer"] = standardizer_to_json(model.logistic.standardizer);
      ordered_json rounds = ordered_json::array();
      for (const LogisticRound& r : model.logistic.rounds)
        rounds.push_back(ordered_json{
            {"weights", r.weights}, {"bias", r.bias}, {"alpha", r.alpha}});
      j["rounds"] = std::move(rounds);
      break;
    }
    case Algo::knn: {
      j["standardizer"] = standardizer_to_json(model.knn.standardizer);
      j["k"] = model.knn.k;
      j["rows"] = model.knn.rows;
      j["labels"] = model.knn.labels;
      break;
    }
    case Algo::gbt: {
      j["initial_log_odds"] = model.gbt.initial_log_odds;
      j["learning_rate"] = model.gbt.learning_rate;
      j["subsample"] = model.gbt.subsample;
      j["max_depth"] = model.gbt.max_depth;
      ordered_json trees = ordered_json::array();
      for (const Tree& t : model.gbt.trees) {
        ordered_json nodes = ordered_json::array();
        for (const TreeNode& nd : t.nodes)
          nodes.push_back(ordered_json::array(
              {nd.feature, nd.threshold, nd.left, nd.right, nd.value}));
        trees.push_back(std::move(nodes));
      }
      j["trees"] = std::move(trees);
      j["staged_train_loss"] = model.gbt.staged_train_loss;
      break;
    }
  }
  return j.dump(2);
}

Model model_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw TrainError("model file is not valid JSON");
  try {
    if (j.at("format_version").get<int>() != 1)
      throw TrainError("unsupported model format version");
    Model model;
    model.algo = algo_from_name(j.at("algo").get<std::string>());
    model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    switch (model.algo) {
      case Algo::naive_bayes: {
        const auto prior = j.at("log_prior").get<std::vector<double>>();
        if (prior.size() != 2) throw TrainError("model log_prior must have 2 entries");
        model.nb.log_prior = {prior[0], prior[1]};
        for (int c = 0; c < 2; ++c) {
          model.nb.feat_mean[c] = j.at("mean").at(c).get<std::vector<double>>();
          model.nb.feat_var[c] = j.at("var").at(c).get<std::vector<double>>();
        }
        break;
      }
      case Algo::logistic: {
        model.logistic.standardizer =
            standardizer_from_json(j.at("standardizer"));
        for (const auto& rj : j.at("rounds")) {
          LogisticRound r;
          r.weights = rj.at("weights").get<std::vector<double>>();
          r.bias = rj.at("bias").get<double>();
          r.alpha = rj.at("alpha").get<double>();
          model.logistic.rounds.push_back(std::move(r));
        }
        break;
      }
      case Algo::knn: {
        model.knn.standardizer = standardizer_from_json(j.at("standardizer"));
        model.knn.k = j.at("k").get<int>();
        model.knn.rows = j.at("rows").get<std::vector<double>>();
        model.knn.labels = j.at("labels").get<std::vector<int>>();
        break;
      }
      case Algo::gbt: {
        model.gbt.initial_log_odds = j.at("initial_log_odds").get<double>();
        model.gbt.learning_rate = j.at("learning_rate").get<double>();
        model.gbt.subsample = j.at("subsample").get<double>();
        model.gbt.max_depth = j.at("max_depth").get<int>();
        for (const auto& tj : j.at("trees")) {
          Tree t;
          for (const auto& nj : tj) {
            TreeNode nd;
            nd.feature = nj.at(0).get<std::int32_t>();
            nd.threshold = nj.at(1).get<double>();
            nd.left = nj.at(2).get<std::int32_t>();
            nd.right = nj.at(3).get<std::int32_t>();
            nd.value = nj.at(4).get<double>();
            t.nodes.push_back(nd);
          }
          model.gbt.trees.push_back(std::move(t));
        }
        model.gbt.staged_train_loss =
            j.at("staged_train_loss").get<std::vector<double>>();
        break;
      }
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw TrainError(std::string("malformed model file: ") + e.what());
  }
}

}  // namespace cqabuse::learn
