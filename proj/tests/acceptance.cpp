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

// Acceptance gate for the toolkit.  Each criterion prints exactly one
// PASS/FAIL line including its wall time; a criterion fails when either its
// property check or its runtime budget is violated.  Run with no arguments to
// execute all ten criteria, or pass criterion numbers to run a subset.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cqabuse/corpus.hpp"
#include "cqabuse/deviance.hpp"
#include "cqabuse/evaluate.hpp"
#include "cqabuse/features.hpp"
#include "cqabuse/graph.hpp"
#include "cqabuse/homophily.hpp"
#include "cqabuse/manifest.hpp"
#include "cqabuse/models.hpp"
#include "cqabuse/rng.hpp"
#include "cqabuse/rose.hpp"
#include "cqabuse/stats.hpp"
#include "cqabuse/synth.hpp"
#include "oracles.hpp"

using namespace cqabuse;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v, int precision = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(precision);
  s << v;
  return s.str();
}

// ---------------------------------------------------------------------------
// 1. evaluate() reproduces the two published F1 values from their
//    precision/recall pairs, tolerance +/- 0.01, in under a second.

double f1_from_counts(std::size_t tp, std::size_t fp, std::size_t fn,
                      std::size_t tn, double expect_p, double expect_r,
                      bool& pr_ok) {
  std::vector<int> predicted, actual;
  const auto append = [&](std::size_t count, int pred, int act) {
    for (std::size_t i = 0; i < count; ++i) {
      predicted.push_back(pred);
      actual.push_back(act);
    }
  };
  append(tp, 1, 1);
  append(fp, 1, 0);
  append(fn, 0, 1);
  append(tn, 0, 0);
  const auto rep = learn::evaluate(predicted, actual);
  pr_ok = std::abs(rep.precision - expect_p) <= 0.01 &&
          std::abs(rep.recall - expect_r) <= 0.01;
  return rep.f1;
}

Outcome criterion_f1_identities() {
  // Counts chosen so the confusion table lands on the published
  // precision/recall pairs: 9694/(9694+306) = 96.94%,
  // 9694/(9694+1913) = 83.52%, 9693/(9693+307) = 96.93%,
  // 9693/(9693+12672) = 43.34%.
  bool pr1 = false, pr2 = false;
  const double f1a = f1_from_counts(9694, 306, 1913, 5000, 96.94, 83.52, pr1);
  const double f1b = f1_from_counts(9693, 307, 12672, 5000, 96.93, 43.34, pr2);
  const bool ok =
      pr1 && pr2 && std::abs(f1a - 89.73) <= 0.01 && std::abs(f1b - 59.89) <= 0.01;
  return {ok, "F1(96.94,83.52)=" + num(f1a) + " vs 89.73, F1(96.93,43.34)=" +
                  num(f1b) + " vs 59.89, tol 0.01"};
}

// ---------------------------------------------------------------------------
// 2. fit_flag_regression vs direct normal-equation solves on 100 randomized
//    ledgers; residuals over each fit population sum to ~0.

Outcome criterion_ols_oracle() {
  Rng rng(920260814);
  double worst_rel = 0.0;
  double worst_resid = 0.0;
  const auto rel = [](double lib, double ref) {
    return std::abs(lib - ref) / std::max(1.0, std::abs(ref));
  };
  for (int t = 0; t < 100; ++t) {
    const auto ledgers = oracles::random_ledgers(rng, 200);
    for (const auto kind :
         {corpus::PostKind::question, corpus::PostKind::answer}) {
      std::vector<double> xs, ys;
      for (const auto& [id, l] : ledgers) {
        const auto posts =
            kind == corpus::PostKind::question ? l.n_questions : l.n_answers;
        if (posts < 1) continue;
        xs.push_back(static_cast<double>(posts));
        ys.push_back(static_cast<double>(kind == corpus::PostKind::question
                                             ? l.q_flags_received_valid
                                             : l.a_flags_received_valid));
      }
      const auto ref = oracles::ols_bruteforce(xs, ys);
      const auto lib = deviance::fit_flag_regression(ledgers, kind);
      worst_rel = std::max({worst_rel, rel(lib.alpha, ref.intercept),
                            rel(lib.beta, ref.slope),
                            rel(lib.r_squared, ref.r_squared)});
      double resid_sum = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i)
        resid_sum += ys[i] - (lib.alpha + lib.beta * xs[i]);
      worst_resid = std::max(worst_resid, std::abs(resid_sum));
      if (lib.n != xs.size())
        return {false, "fit population size mismatch on ledger " +
                           std::to_string(t)};
    }
  }
  const bool ok = worst_rel <= 1e-9 && worst_resid <= 1e-9;
  return {ok, "100 ledgers x 2 kinds: max rel err " + num(worst_rel, 12) +
                  " (<=1e-9), max |sum residuals| " + num(worst_resid, 12) +
                  " (<=1e-9)"};
}

// ---------------------------------------------------------------------------
// 3. Five graph kernels vs brute-force oracles on 50 random graphs of up to
//    1000 nodes.  Integer-derived outputs must agree exactly; the two
//    floating reductions are allowed float-associativity slack only.

Outcome criterion_graph_oracles() {
  Rng rng(54321);
  double worst_cc = 0.0;     // clustering, absolute
  double worst_assort = 0.0; // assortativity, relative
  for (int t = 0; t < 50; ++t) {
    const auto spec = oracles::random_graph(rng, 1000);
    const auto g = oracles::to_library_graph(spec);
    for (std::uint32_t v = 0; v < spec.n; ++v)
      if (!g.index_of(oracles::node_id(v)) || *g.index_of(oracles::node_id(v)) != v)
        return {false, "node index mapping broke on graph " + std::to_string(t)};

    if (graph::reciprocity(g) != oracles::reciprocity_bruteforce(spec.edges))
      return {false, "reciprocity mismatch on graph " + std::to_string(t)};

    const auto cc_lib = graph::local_clustering(g);
    const auto cc_ref = oracles::clustering_bruteforce(spec.n, spec.edges);
    for (std::size_t v = 0; v < cc_lib.size(); ++v)
      worst_cc = std::max(worst_cc, std::abs(cc_lib[v] - cc_ref[v]));

    const auto parts = graph::weakly_connected_components(g);
    std::vector<std::uint32_t> lib_min(parts.count, UINT32_MAX);
    for (std::uint32_t v = 0; v < spec.n; ++v)
      lib_min[parts.label[v]] = std::min(lib_min[parts.label[v]], v);
    const auto ref_label =
        oracles::component_min_labels_bruteforce(spec.n, spec.edges);
    for (std::uint32_t v = 0; v < spec.n; ++v)
      if (lib_min[parts.label[v]] != ref_label[v])
        return {false, "weak components mismatch on graph " + std::to_string(t)};

    for (int probe = 0; probe < 3; ++probe) {
      const auto source = static_cast<std::uint32_t>(rng.uniform_int(spec.n));
      const auto depth = static_cast<std::int32_t>(1 + rng.uniform_int(5));
      const bool reverse = rng.bernoulli(0.5);
      const auto lib = graph::bfs_distances(
          g, source, depth,
          reverse ? graph::Orientation::reverse : graph::Orientation::forward);
      const auto ref =
          oracles::bfs_bruteforce(spec.n, spec.edges, source, depth, reverse);
      for (std::uint32_t v = 0; v < spec.n; ++v)
        if (lib[v] != ref[v])
          return {false, "BFS distance mismatch on graph " + std::to_string(t)};
    }

    if (!spec.edges.empty()) {
      std::vector<double> attr(spec.n);
      for (auto& a : attr) a = rng.normal();
      const double lib = homophily::attribute_assortativity(g, attr);
      const double ref = oracles::assortativity_bruteforce(spec.edges, attr);
      worst_assort =
          std::max(worst_assort,
                   std::abs(lib - ref) / std::max(1.0, std::abs(ref)));
    }
  }
  const bool ok = worst_cc <= 1e-14 && worst_assort <= 1e-9;
  return {ok,
          "50 graphs: reciprocity/WCC/BFS exact, max |d clustering| " +
              num(worst_cc, 17) + " (<=1e-14), max rel d assortativity " +
              num(worst_assort, 12) + " (<=1e-9)"};
}

// ---------------------------------------------------------------------------
// 4. The continuous MLE recovers the density exponent of Pareto(2.5) samples
//    (survival tail exponent 1.5) within +/- 0.1 on a fixed seed.

Outcome criterion_power_law() {
  Rng rng(20260814);
  std::vector<double> xs(100000);
  for (auto& x : xs) x = rng.pareto(1.5, 1.0);
  const auto fit = graph::fit_power_law_samples(xs, 1.0, false);
  const bool ok = std::abs(fit.alpha - 2.5) <= 0.1 && fit.n_tail == xs.size();
  return {ok, "alpha " + num(fit.alpha) + " vs 2.5 (tol 0.1) on 1e5 samples"};
}

// ---------------------------------------------------------------------------
// 5. Planted homophily, seed-averaged over 5 seeds of a 10k-user corpus:
//    (a) answer + flag distance profiles strictly decreasing over hops 1..4,
//    (b) observed <=3-hop report mass >= 3x the null-model mass,
//    (c) deviance assortativity > 0.05 with strength 0.8; |r| < 0.05 at 0.

std::vector<double> node_total_deviance(const corpus::EventCorpus& c,
                                        const DirectedGraph& ff) {
  const auto ledgers = corpus::aggregate_ledgers(c);
  const auto qm = deviance::fit_flag_regression(ledgers, corpus::PostKind::question);
  const auto am = deviance::fit_flag_regression(ledgers, corpus::PostKind::answer);
  const auto report = deviance::deviance_scores(ledgers, qm, am);
  std::vector<double> scores(ff.num_nodes(), 0.0);
  for (const auto& u : report.per_user) {
    const auto idx = ff.index_of(u.user_id);
    if (idx) scores[*idx] = u.question_deviance + u.answer_deviance;
  }
  return scores;
}

Outcome criterion_homophily() {
  constexpr int kSeeds = 5;
  constexpr int kHops = 4;
  constexpr std::size_t kSample = 1500;
  std::vector<double> answer_avg(kHops, 0.0), flag_avg(kHops, 0.0);
  double mass_obs = 0.0, mass_null = 0.0, r_sum = 0.0, r0_sum = 0.0;

  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    corpus::SyntheticConfig cfg;
    cfg.n_users = 10000;
    cfg.homophily_strength = 0.8;
    cfg.seed = seed;
    const auto c = corpus::generate_synthetic(cfg);
    const auto ff = corpus::build_ff_network(c);

    const auto ap = homophily::answer_distance_profile(ff, c, kHops, kSample, seed);
    const auto fp = homophily::flag_distance_profile(ff, c, kHops, kSample, seed);
    for (int h = 0; h < kHops; ++h) {
      answer_avg[h] += ap.points[h].probability / kSeeds;
      flag_avg[h] += fp.points[h].probability / kSeeds;
    }

    const auto obs = homophily::report_distance_histogram(
        ff, c.flags, homophily::HistogramVariant::observed, 3, seed);
    const auto nul = homophily::report_distance_histogram(
        ff, c.flags, homophily::HistogramVariant::null_model, 3, seed);
    for (double pct : obs.hop_pct) mass_obs += pct / kSeeds;
    for (double pct : nul.hop_pct) mass_null += pct / kSeeds;

    r_sum += homophily::attribute_assortativity(ff, node_total_deviance(c, ff));

    corpus::SyntheticConfig control = cfg;
    control.homophily_strength = 0.0;
    const auto c0 = corpus::generate_synthetic(control);
    const auto ff0 = corpus::build_ff_network(c0);
    r0_sum +=
        homophily::attribute_assortativity(ff0, node_total_deviance(c0, ff0));
  }

  bool decreasing = true;
  for (int h = 1; h < kHops; ++h)
    decreasing = decreasing && answer_avg[h] < answer_avg[h - 1] &&
                 flag_avg[h] < flag_avg[h - 1];
  const double r = r_sum / kSeeds;
  const double r0 = r0_sum / kSeeds;
  const bool ok = decreasing && mass_obs >= 3.0 * mass_null && r > 0.05 &&
                  std::abs(r0) < 0.05;
  return {ok, "profiles decreasing=" + std::string(decreasing ? "yes" : "no") +
                  ", report mass obs/null " + num(mass_obs, 2) + "/" +
                  num(mass_null, 2) + " (need >=3x), assortativity r=" +
                  num(r) + " (> 0.05), control r=" + num(r0) + " (|r| < 0.05)"};
}

// ---------------------------------------------------------------------------
// 6. Suspension-probability curves: non-increasing over the percent grid and
//    each volume-adjusted (deviance) ranking weakly dominates the raw flag
//    count it adjusts at x in {1,5,10}%, strictly somewhere, per seed.

Outcome criterion_suspension_curve() {
  const std::vector<double> grid{1, 5, 10, 20, 50, 100};
  constexpr double kSlack = 1e-12;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    corpus::SyntheticConfig cfg;
    cfg.n_users = 10000;
    cfg.seed = seed;
    const auto c = corpus::generate_synthetic(cfg);
    const auto ledgers = corpus::aggregate_ledgers(c);
    const auto qm = deviance::fit_flag_regression(ledgers, corpus::PostKind::question);
    const auto am = deviance::fit_flag_regression(ledgers, corpus::PostKind::answer);
    const auto report = deviance::deviance_scores(ledgers, qm, am);

    std::set<std::string> suspended;
    for (const auto& u : c.users)
      if (u.suspended) suspended.insert(u.user_id);

    using Scores = std::vector<std::pair<std::string, double>>;
    Scores by_q, by_a, by_total, by_qflags, by_aflags, by_flags;
    {
      std::size_t i = 0;
      for (const auto& [user_id, ledger] : ledgers) {
        const auto& u = report.per_user[i++];
        by_q.emplace_back(user_id, u.question_deviance);
        by_a.emplace_back(user_id, u.answer_deviance);
        by_total.emplace_back(user_id,
                              u.question_deviance + u.answer_deviance);
        by_qflags.emplace_back(user_id,
                               static_cast<double>(ledger.q_flags_received));
        by_aflags.emplace_back(user_id,
                               static_cast<double>(ledger.a_flags_received));
        by_flags.emplace_back(user_id,
                              static_cast<double>(ledger.q_flags_received +
                                                  ledger.a_flags_received));
      }
    }

    const auto curve = [&](const Scores& s) {
      return deviance::suspension_probability_curve(s, suspended, grid);
    };
    const std::vector<std::pair<std::string, std::vector<deviance::CurvePoint>>>
        curves{{"question_deviance", curve(by_q)},
               {"answer_deviance", curve(by_a)},
               {"total_deviance", curve(by_total)},
               {"raw_question_flags", curve(by_qflags)},
               {"raw_answer_flags", curve(by_aflags)},
               {"raw_flags", curve(by_flags)}};

    for (const auto& [name, pts] : curves)
      for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].probability > pts[i - 1].probability + kSlack)
          return {false, "seed " + std::to_string(seed) + ": " + name +
                             " curve rises at x=" + num(pts[i].percent, 0)};

    const auto dominates = [&](const std::vector<deviance::CurvePoint>& dev,
                               const std::vector<deviance::CurvePoint>& raw,
                               const std::string& label) -> std::string {
      bool strict = false;
      for (std::size_t i = 0; i < 3; ++i) {  // grid slots for x = 1, 5, 10
        if (dev[i].probability < raw[i].probability - kSlack)
          return "seed " + std::to_string(seed) + ": " + label +
                 " loses to raw ranking at x=" + num(dev[i].percent, 0);
        if (dev[i].probability > raw[i].probability + kSlack) strict = true;
      }
      if (!strict)
        return "seed " + std::to_string(seed) + ": " + label +
               " never strictly beats the raw ranking at x in {1,5,10}";
      return "";
    };
    for (const auto& [dev_i, raw_i, label] :
         std::vector<std::tuple<int, int, std::string>>{
             {0, 3, "question_deviance"},
             {1, 4, "answer_deviance"},
             {2, 5, "total_deviance"}}) {
      const auto err = dominates(curves[static_cast<std::size_t>(dev_i)].second,
                                 curves[static_cast<std::size_t>(raw_i)].second,
                                 label);
      if (!err.empty()) return {false, err};
    }
  }
  return {true,
          "3 seeds x 6 rankings monotone on {1,5,10,20,50,100}; deviance >= "
          "raw at {1,5,10} with strict dominance, per kind"};
}

// ---------------------------------------------------------------------------
// 7. Full detection pipeline on stealth-heavy corpora: split, rebalance the
//    training side, boost, evaluate on the untouched test side.

Outcome criterion_classifier_floor() {
  std::string detail = "per seed acc/recall:";
  bool ok = true;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    corpus::SyntheticConfig cfg;
    cfg.n_users = 10000;
    cfg.stealth_fraction = 0.4;
    cfg.seed = seed;
    const auto c = corpus::generate_synthetic(cfg);
    const auto ledgers = corpus::aggregate_ledgers(c);
    const auto qm = deviance::fit_flag_regression(ledgers, corpus::PostKind::question);
    const auto am = deviance::fit_flag_regression(ledgers, corpus::PostKind::answer);
    const auto report = deviance::deviance_scores(ledgers, qm, am);
    const auto ff = corpus::build_ff_network(c);
    const auto fm = learn::extract_features(c, ledgers, report, ff);
    const auto data = learn::build_labeled_dataset(fm, c);

    const auto split = learn::train_test_split(data, 0.4, seed);
    const auto balanced = learn::rose_balance(split.train, 0.5, 0.0, seed);
    const auto model = learn::train(balanced, learn::Algo::gbt, {}, seed);
    const auto pred = learn::predict(model, split.test);
    const auto rep = learn::evaluate(pred.labels, split.test.labels);

    ok = ok && rep.accuracy >= 80.0 && rep.recall >= 65.0;
    detail += " " + num(rep.accuracy, 2) + "/" + num(rep.recall, 2);
  }
  return {ok, detail + " (need >=80/>=65)"};
}

// ---------------------------------------------------------------------------
// 8. Rebalancing arithmetic: 9:1 -> 1:1 within rounding, shrink=0 emits exact
//    minority copies, fixed seeds reproduce identical outputs.

Outcome criterion_rose() {
  learn::LabeledDataset data;
  data.feature_names = {"x", "y"};
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const int label = i < 100 ? 1 : 0;
    data.values.push_back(label * 4.0 + rng.normal());
    data.values.push_back(rng.normal());
    data.labels.push_back(label);
  }
  learn::refresh_standardization(data);

  const auto bal = learn::rose_balance(data, 0.5, 0.0, 17);
  const auto n1 = static_cast<long>(
      std::count(bal.labels.begin(), bal.labels.end(), 1));
  const auto n0 = static_cast<long>(bal.labels.size()) - n1;
  if (std::labs(n0 - n1) > 1)
    return {false, "balance " + std::to_string(n0) + ":" + std::to_string(n1) +
                       " is not 1:1 within rounding"};

  std::set<std::pair<double, double>> originals;
  for (std::size_t i = 0; i < data.n_rows(); ++i)
    if (data.labels[i] == 1)
      originals.insert({data.row(i)[0], data.row(i)[1]});
  for (std::size_t i = 0; i < bal.n_rows(); ++i)
    if (bal.labels[i] == 1 &&
        originals.find({bal.row(i)[0], bal.row(i)[1]}) == originals.end())
      return {false, "shrink=0 produced a minority row that is not an exact copy"};

  const auto again = learn::rose_balance(data, 0.5, 0.0, 17);
  if (again.values != bal.values || again.labels != bal.labels)
    return {false, "identical seeds produced different balanced datasets"};

  const auto jittered = learn::rose_balance(data, 0.5, 1.0, 17);
  bool any_synthetic = false;
  for (std::size_t i = 0; i < jittered.n_rows(); ++i)
    if (jittered.labels[i] == 1 &&
        originals.find({jittered.row(i)[0], jittered.row(i)[1]}) ==
            originals.end())
      any_synthetic = true;
  if (!any_synthetic)
    return {false, "shrink=1 never produced a jittered minority row"};

  return {true, "900:100 -> " + std::to_string(n0) + ":" + std::to_string(n1) +
                    ", shrink=0 rows are exact copies, seed-stable"};
}

// ---------------------------------------------------------------------------
// 9. Permutation p-values are uniform under the null, and the KS statistic
//    matches an exhaustive sup-distance oracle.

Outcome criterion_statistics() {
  constexpr int kReplicates = 200;
  std::vector<double> ps;
  ps.reserve(kReplicates);
  for (int t = 0; t < kReplicates; ++t) {
    Rng rng(1000 + static_cast<std::uint64_t>(t));
    std::vector<double> a(50), b(50);
    for (auto& v : a) v = rng.normal();
    for (auto& v : b) v = rng.normal();
    ps.push_back(stats::permutation_test(a, b, 499,
                                         2000 + static_cast<std::uint64_t>(t))
                     .p_value);
  }
  std::sort(ps.begin(), ps.end());
  double d_uniform = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double hi = static_cast<double>(i + 1) / kReplicates;
    const double lo = static_cast<double>(i) / kReplicates;
    d_uniform = std::max({d_uniform, std::abs(hi - ps[i]), std::abs(ps[i] - lo)});
  }

  Rng rng(424242);
  double worst_ks = 0.0;
  for (int t = 0; t < 20; ++t) {
    std::vector<double> a(3 + rng.uniform_int(38)), b(3 + rng.uniform_int(38));
    for (auto& v : a) v = rng.normal();
    for (auto& v : b) v = rng.normal(0.5, 1.3);
    const double lib = stats::ks_two_sample(a, b).statistic;
    const double ref = oracles::ks_bruteforce(a, b);
    worst_ks = std::max(worst_ks, std::abs(lib - ref));
  }

  const bool ok = d_uniform < 0.08 && worst_ks <= 1e-12;
  return {ok, "null p-value uniformity KS D=" + num(d_uniform) +
                  " (< 0.08 over 200 replicates), max |d KS stat| " +
                  num(worst_ks, 15) + " (<=1e-12 over 20 pairs)"};
}

// ---------------------------------------------------------------------------
// 10. End-to-end determinism: rerunning synth -> analyze -> learn with the
//     same seeds reproduces every CSV byte and every manifest hash.

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_tool(const std::string& args) {
  const std::string cmd =
      std::string("\"") + CQABUSE_BIN + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return status >= 0 && WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct ManifestCore {
  std::string command, config;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> inputs, outputs;

  bool operator==(const ManifestCore&) const = default;
};

ManifestCore manifest_core(const fs::path& path) {
  const auto m = load_manifest(path);
  return {m.command, m.config_json, m.seed, m.input_hashes, m.output_hashes};
}

Outcome criterion_end_to_end_determinism() {
  const fs::path base = fs::temp_directory_path() / "cqabuse_acceptance_e2e";
  fs::remove_all(base);
  const fs::path corpus_dir = base / "corpus";
  const fs::path analyze_dir = base / "analysis";
  const fs::path learn_dir = base / "model";

  const std::vector<std::string> stages{
      "synth --users 3000 --seed 11 --out-dir " + corpus_dir.string(),
      "analyze --corpus " + corpus_dir.string() +
          " --analysis deviance --seed 11 --out-dir " + analyze_dir.string(),
      "learn --corpus " + corpus_dir.string() +
          " --gbt-trees 40 --seed 11 --dump-dataset --out-dir " +
          learn_dir.string()};

  const auto run_all = [&]() -> bool {
    for (const auto& stage : stages)
      if (run_tool(stage) != 0) return false;
    return true;
  };

  if (!run_all()) return {false, "a pipeline stage failed on the first run"};

  std::map<fs::path, std::string> files;  // every artifact except manifests
  std::map<fs::path, ManifestCore> manifests;
  for (const auto& dir : {corpus_dir, analyze_dir, learn_dir})
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.path().filename() == "manifest.json")
        manifests[entry.path()] = manifest_core(entry.path());
      else
        files[entry.path()] = slurp(entry.path());
    }
  if (files.empty() || manifests.size() != 3)
    return {false, "first run produced no artifacts to compare"};

  if (!run_all()) return {false, "a pipeline stage failed on the second run"};

  std::size_t checked = 0;
  for (const auto& [path, bytes] : files) {
    if (slurp(path) != bytes)
      return {false, path.filename().string() + " changed between reruns"};
    ++checked;
  }
  for (const auto& [path, core] : manifests)
    if (manifest_core(path) != core)
      return {false, path.string() + " manifest drifted between reruns"};

  return {true, "3 stages rerun: " + std::to_string(checked) +
                    " artifacts byte-identical, 3 manifests hash-identical"};
}

// ---------------------------------------------------------------------------

struct Criterion {
  int id;
  double budget_seconds;  // 0 = no budget
  Outcome (*fn)();
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, 1.0, criterion_f1_identities},
      {2, 0.0, criterion_ols_oracle},
      {3, 30.0, criterion_graph_oracles},
      {4, 5.0, criterion_power_law},
      {5, 120.0, criterion_homophily},
      {6, 30.0, criterion_suspension_curve},
      {7, 300.0, criterion_classifier_floor},
      {8, 1.0, criterion_rose},
      {9, 60.0, criterion_statistics},
      {10, 0.0, criterion_end_to_end_determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int id = std::atoi(argv[i]);
    if (id < 1 || id > 10) {
      std::cerr << "usage: " << argv[0] << " [criterion numbers 1-10]\n";
      return 2;
    }
    selected.push_back(id);
  }

  bool all_pass = true;
  for (const auto& c : criteria()) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool in_budget = c.budget_seconds <= 0.0 || secs <= c.budget_seconds;
    const bool pass = outcome.pass && in_budget;
    all_pass = all_pass && pass;
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL")
              << " - " << outcome.detail;
    if (!in_budget)
      std::cout << " [over budget: " << num(c.budget_seconds, 0) << "s]";
    std::cout << " (" << num(secs, 2) << "s)\n";
  }
  return all_pass ? 0 : 1;
}
