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

#include "cqabuse/features.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cqabuse/csv.hpp"
#include "cqabuse/errors.hpp"

namespace cqabuse::learn {

namespace {

struct FeatureDef {
  const char* name;
  const char* category;
};

constexpr FeatureDef kFeatures[kFeatureCount] = {
    {"indegree", "social"},
    {"outdegree", "social"},
    {"status", "social"},
    {"ego_reciprocity", "social"},
    {"recip_net_degree", "social"},
    {"recip_net_cc", "social"},
    {"n_questions", "activity"},
    {"n_answers", "activity"},
    {"n_flagged_questions", "activity"},
    {"n_flagged_answers", "activity"},
    {"points", "accomplishment"},
    {"n_best_answers", "accomplishment"},
    {"award_ratings", "accomplishment"},
    {"thumbs", "accomplishment"},
    {"altruistic_score", "accomplishment"},
    {"q_flags_received", "flag"},
    {"q_flags_received_valid", "flag"},
    {"q_flags_reported", "flag"},
    {"q_flags_reported_valid", "flag"},
    {"a_flags_received", "flag"},
    {"a_flags_received_valid", "flag"},
    {"a_flags_reported", "flag"},
    {"a_flags_reported_valid", "flag"},
    {"question_deviance", "deviance_score"},
    {"answer_deviance", "deviance_score"},
    {"follower_mean_question_deviance", "deviance_homophily"},
    {"follower_mean_answer_deviance", "deviance_homophily"},
    {"followee_mean_question_deviance", "deviance_homophily"},
    {"followee_mean_answer_deviance", "deviance_homophily"},
};

//! Count of mutual (reciprocated) neighbors of node i.
std::size_t mutual_degree(const DirectedGraph& g, std::uint32_t i) {
  const auto outs = g.out(i);
  const auto ins = g.in(i);
  std::size_t count = 0;
  std::size_t a = 0, b = 0;
  while (a < outs.size() && b < ins.size()) {
    if (outs[a] < ins[b])
      ++a;
    else if (ins[b] < outs[a])
      ++b;
    else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

}  // namespace

const std::vector<std::string>& feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    v.reserve(kFeatureCount);
    for (const auto& f : kFeatures) v.emplace_back(f.name);
    return v;
  }();
  return names;
}

const std::vector<std::string>& feature_categories() {
  static const std::vector<std::string> cats = [] {
    std::vector<std::string> v;
    v.reserve(kFeatureCount);
    for (const auto& f : kFeatures) v.emplace_back(f.category);
    return v;
  }();
  return cats;
}

double altruistic_score(const corpus::UserLedger& ledger) {
  return 2.0 * static_cast<double>(ledger.n_answers) +
         10.0 * static_cast<double>(ledger.n_best_answers) -
         5.0 * static_cast<double>(ledger.n_questions);
}

std::optional<std::size_t> FeatureMatrix::index_of(std::string_view user_id) const {
  const auto it = std::lower_bound(user_ids.begin(), user_ids.end(), user_id);
  if (it == user_ids.end() || *it != user_id) return std::nullopt;
  return static_cast<std::size_t>(it - user_ids.begin());
}

FeatureMatrix extract_features(const corpus::EventCorpus& corpus,
                               const corpus::LedgerMap& ledgers,
                               const deviance::DevianceReport& report,
                               const DirectedGraph& ff) {
  (void)corpus;  // everything needed is in the aggregates and graph
  const std::size_t n_graph = ff.num_nodes();

  // Deviance per graph node for the neighbor means.
  std::vector<double> q_dev(n_graph, 0.0), a_dev(n_graph, 0.0);
  std::vector<std::uint8_t> have_dev(n_graph, 0);
  for (const auto& d : report.per_user) {
    const auto idx = ff.index_of(d.user_id);
    if (!idx) continue;
    q_dev[*idx] = d.question_deviance;
    a_dev[*idx] = d.answer_deviance;
    have_dev[*idx] = 1;
  }

  const std::vector<double> clustering = graph::local_clustering(ff);

  FeatureMatrix out;
  out.user_ids.reserve(ledgers.size());
  out.values.resize(ledgers.size() * kFeatureCount, 0.0);

  std::size_t row = 0;
  auto dev_it = report.per_user.begin();
  for (const auto& [id, ledger] : ledgers) {
    const auto idx = ff.index_of(id);
    if (!idx)
      throw AnalysisError("user '" + id + "' missing from the follow graph");
    while (dev_it != report.per_user.end() && dev_it->user_id < id) ++dev_it;
    if (dev_it == report.per_user.end() || dev_it->user_id != id)
      throw AnalysisError("user '" + id + "' missing from the deviance report");
    if (!have_dev[*idx])
      throw AnalysisError("deviance entry for '" + id + "' not mapped to graph");

    const auto ins = ff.in(*idx);
    const auto outs = ff.out(*idx);
    const double indeg = static_cast<double>(ins.size());
    const double outdeg = static_cast<double>(outs.size());
    const double mutual = static_cast<double>(mutual_degree(ff, *idx));
    const double adjacent = indeg + outdeg;

    double follower_q = 0.0, follower_a = 0.0;
    for (std::uint32_t v : ins) {
      follower_q += q_dev[v];
      follower_a += a_dev[v];
    }
    double followee_q = 0.0, followee_a = 0.0;
    for (std::uint32_t v : outs) {
      followee_q += q_dev[v];
      followee_a += a_dev[v];
    }

    double* f = out.values.data() + row * kFeatureCount;
    f[0] = indeg;
    f[1] = outdeg;
    f[2] = indeg / std::max(outdeg, 1.0);
    f[3] = adjacent > 0.0 ? 2.0 * mutual / adjacent : 0.0;
    f[4] = mutual;
    f[5] = clustering[*idx];
    f[6] = static_cast<double>(ledger.n_questions);
    f[7] = static_cast<double>(ledger.n_answers);
    f[8] = static_cast<double>(ledger.n_flagged_questions);
    f[9] = static_cast<double>(ledger.n_flagged_answers);
    f[10] = static_cast<double>(ledger.points);
    f[11] = static_cast<double>(ledger.n_best_answers);
    f[12] = static_cast<double>(ledger.award_ratings_sum);
    f[13] = static_cast<double>(ledger.thumbs_up_sum - ledger.thumbs_down_sum);
    f[14] = altruistic_score(ledger);
    f[15] = static_cast<double>(ledger.q_flags_received);
    f[16] = static_cast<double>(ledger.q_flags_received_valid);
    f[17] = static_cast<double>(ledger.q_flags_reported);
    f[18] = static_cast<double>(ledger.q_flags_reported_valid);
    f[19] = static_cast<double>(ledger.a_flags_received);
    f[20] = static_cast<double>(ledger.a_flags_received_valid);
    f[21] = static_cast<double>(ledger.a_flags_reported);
    f[22] = static_cast<double>(ledger.a_flags_reported_valid);
    f[23] = dev_it->question_deviance;
    f[24] = dev_it->answer_deviance;
    f[25] = ins.empty() ? 0.0 : follower_q / indeg;
    f[26] = ins.empty() ? 0.0 : follower_a / indeg;
    f[27] = outs.empty() ? 0.0 : followee_q / outdeg;
    f[28] = outs.empty() ? 0.0 : followee_a / outdeg;

    out.user_ids.push_back(id);
    ++row;
  }
  return out;
}

void refresh_standardization(LabeledDataset& data) {
  const std::size_t w = data.width();
  const std::size_t n = data.n_rows();
  data.mean.assign(w, 0.0);
  data.stddev.assign(w, 0.0);
  if (n == 0) return;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = data.row(i);
    for (std::size_t j = 0; j < w; ++j) data.mean[j] += r[j];
  }
  for (std::size_t j = 0; j < w; ++j) data.mean[j] /= static_cast<double>(n);
  if (n < 2) return;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = data.row(i);
    for (std::size_t j = 0; j < w; ++j) {
      const double d = r[j] - data.mean[j];
      data.stddev[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < w; ++j)
    data.stddev[j] = std::sqrt(data.stddev[j] / static_cast<double>(n - 1));
}

LabeledDataset build_labeled_dataset(const FeatureMatrix& features,
                                     const corpus::EventCorpus& corpus) {
  std::map<std::string_view, bool> suspended;
  for (const auto& u : corpus.users) suspended.emplace(u.user_id, u.suspended);

  LabeledDataset data;
  data.feature_names = feature_names();
  data.values = features.values;
  data.labels.reserve(features.n_rows());
  for (const auto& id : features.user_ids) {
    const auto it = suspended.find(id);
    if (it == suspended.end())
      throw AnalysisError("feature row user '" + id + "' missing from user table");
    data.labels.push_back(it->second ? 1 : 0);
  }
  refresh_standardization(data);
  return data;
}

LabeledDataset select_features(const LabeledDataset& data,
                               const std::vector<std::size_t>& keep) {
  for (std::size_t j : keep)
    if (j >= data.width())
      throw ConfigError("feature index " + std::to_string(j) + " out of range");
  LabeledDataset out;
  out.feature_names.reserve(keep.size());
  for (std::size_t j : keep) out.feature_names.push_back(data.feature_names[j]);
  out.labels = data.labels;
  out.values.resize(data.n_rows() * keep.size());
  for (std::size_t i = 0; i < data.n_rows(); ++i) {
    const auto r = data.row(i);
    for (std::size_t k = 0; k < keep.size(); ++k)
      out.values[i * keep.size() + k] = r[keep[k]];
  }
  refresh_standardization(out);
  return out;
}

std::string dataset_to_csv(const LabeledDataset& data) {
  std::string buf;
  for (std::size_t j = 0; j < data.width(); ++j) {
    buf += data.feature_names[j];
    buf += ',';
  }
  buf += "label\n";
  for (std::size_t i = 0; i < data.n_rows(); ++i) {
    const auto r = data.row(i);
    for (std::size_t j = 0; j < data.width(); ++j) {
      buf += csv::format_double(r[j]);
      buf += ',';
    }
    buf += csv::format_int(data.labels[i]);
    buf += '\n';
  }
  return buf;
}

LabeledDataset dataset_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw CorpusError("dataset CSV is empty");
  const std::vector<std::string> header = csv::split_line(line);
  if (header.empty() || header.back() != "label")
    throw CorpusError("dataset CSV must end with a 'label' column");

  LabeledDataset data;
  data.feature_names.assign(header.begin(), header.end() - 1);
  const std::size_t w = data.feature_names.size();
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = csv::split_line(line);
    const std::string where = "dataset.csv:" + std::to_string(line_no);
    if (fields.size() != w + 1)
      throw CorpusError(where + ": expected " + std::to_string(w + 1) +
                        " fields, got " + std::to_string(fields.size()));
    for (std::size_t j = 0; j < w; ++j)
      data.values.push_back(csv::parse_double(fields[j], where));
    const std::int64_t label = csv::parse_int(fields[w], where);
    if (label != 0 && label != 1)
      throw CorpusError(where + ": label must be 0 or 1");
    data.labels.push_back(static_cast<int>(label));
  }
  refresh_standardization(data);
  return data;
}

}  // namespace cqabuse::learn
