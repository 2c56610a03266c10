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

// Command-line front end.  Four subcommands cover the pipeline:
//
//   synth    generate a seeded synthetic corpus with planted abuse structure
//   analyze  run one analysis suite (network, deviance, homophily, timing)
//            over a corpus and emit plot-ready CSV files
//   learn    extract features, balance, train and evaluate a classifier
//   report   print the manifest of a previous run
//
// Every run that writes files also writes <out-dir>/manifest.json recording
// the effective config, seed, thread count, input/output content hashes and
// per-stage wall times, so results can be audited and reruns verified.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cqabuse/corpus.hpp"
#include "cqabuse/csv.hpp"
#include "cqabuse/deviance.hpp"
#include "cqabuse/errors.hpp"
#include "cqabuse/evaluate.hpp"
#include "cqabuse/features.hpp"
#include "cqabuse/graph.hpp"
#include "cqabuse/homophily.hpp"
#include "cqabuse/manifest.hpp"
#include "cqabuse/models.hpp"
#include "cqabuse/parallel.hpp"
#include "cqabuse/rng.hpp"
#include "cqabuse/rose.hpp"
#include "cqabuse/stats.hpp"
#include "cqabuse/synth.hpp"
#include "cqabuse/timing.hpp"

namespace {

namespace fs = std::filesystem;
using cqabuse::AnalysisError;
using cqabuse::ConfigError;
using cqabuse::CorpusError;
using cqabuse::DirectedGraph;
using cqabuse::RunManifest;
using cqabuse::TrainError;
namespace corpus = cqabuse::corpus;
namespace csvf = cqabuse::csv;
namespace dv = cqabuse::deviance;
namespace gr = cqabuse::graph;
namespace hp = cqabuse::homophily;
namespace ml = cqabuse::learn;
namespace tm = cqabuse::timing;

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Shared plumbing

struct GlobalOptions {
  std::uint64_t seed = 42;
  int threads = 0;
  std::string out_dir = "out";
  std::string format = "jsonl";
};

//! Records elapsed wall time per pipeline stage into the manifest.
class StageTimer {
 public:
  void lap(RunManifest& m, const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    m.stage_timings.push_back(
        {stage, std::chrono::duration<double>(now - last_).count()});
    last_ = now;
  }

 private:
  std::chrono::steady_clock::time_point last_ =
      std::chrono::steady_clock::now();
};

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw CorpusError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw CorpusError("short write to " + path.string());
}

//! Buffers generated text artifacts and lands them in one step, so the
//! manifest lists exactly the files that were written, each with its hash.
class RunOutputs {
 public:
  explicit RunOutputs(fs::path dir) : dir_(std::move(dir)) {}

  void add(std::string name, std::string content) {
    files_.emplace_back(std::move(name), std::move(content));
  }

  std::size_t file_count() const { return files_.size(); }

  //! Write all buffered files, record their hashes, then write the manifest.
  void commit(RunManifest manifest, StageTimer& timer) {
    fs::create_directories(dir_);
    for (const auto& [name, content] : files_) {
      write_text_file(dir_ / name, content);
      manifest.output_hashes[name] = cqabuse::fnv1a64_hex(content);
    }
    timer.lap(manifest, "write");
    cqabuse::save_manifest(manifest, dir_ / "manifest.json");
  }

 private:
  fs::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

std::string command_line(int argc, char** argv) {
  std::string cmd = "cqabuse";
  for (int i = 1; i < argc; ++i) {
    cmd += ' ';
    cmd += argv[i];
  }
  return cmd;
}

corpus::CorpusFormat format_from_name(const std::string& name) {
  if (name == "jsonl") return corpus::CorpusFormat::jsonl;
  if (name == "csv") return corpus::CorpusFormat::csv_bundle;
  throw ConfigError("unknown format '" + name + "' (valid: csv, jsonl)");
}

//! A corpus directory carries its format in its file extensions.
corpus::CorpusFormat detect_corpus_format(const fs::path& dir) {
  if (fs::exists(dir / "users.jsonl")) return corpus::CorpusFormat::jsonl;
  if (fs::exists(dir / "users.csv")) return corpus::CorpusFormat::csv_bundle;
  throw CorpusError("no corpus found in '" + dir.string() +
                    "' (expected users.jsonl or users.csv)");
}

//! Load a corpus and record its file hashes as manifest inputs.
corpus::EventCorpus load_input_corpus(const fs::path& dir, RunManifest& m) {
  const auto format = detect_corpus_format(dir);
  for (const auto& name : corpus::corpus_file_names(format))
    m.input_hashes[name] = cqabuse::hash_file(dir / name);
  return corpus::load_corpus(dir, format);
}

//! Stable per-stage seed derivation from the root seed.
std::uint64_t stage_seed(std::uint64_t root_seed, std::uint64_t stream) {
  return cqabuse::Rng(root_seed).fork(stream).next_u64();
}

std::string fd(double v) { return csvf::format_double(v); }
std::string fi(std::int64_t v) { return csvf::format_int(v); }

//! Append `measure,kind,percentile,value` rows at integer percentiles 0..100.
void append_percentile_rows(std::string& csv, const std::string& prefix,
                            const cqabuse::stats::EmpiricalDistribution& d) {
  for (int q = 0; q <= 100; ++q)
    csv += prefix + ',' + fi(q) + ',' + fd(d.quantile(q / 100.0)) + '\n';
}

// ---------------------------------------------------------------------------
// synth

struct SynthCli {
  std::string config_file;
  corpus::SyntheticConfig cfg;  // CLI-bound override values

  CLI::Option* users = nullptr;
  CLI::Option* follow_degree_exponent = nullptr;
  CLI::Option* homophily_strength = nullptr;
  CLI::Option* deviant_fraction = nullptr;
  CLI::Option* suspended_fraction = nullptr;
  CLI::Option* stealth_fraction = nullptr;
  CLI::Option* question_rate = nullptr;
  CLI::Option* answer_rate = nullptr;
  CLI::Option* activity_tail_exponent = nullptr;
  CLI::Option* activity_cap = nullptr;
  CLI::Option* answer_hop_base = nullptr;
  CLI::Option* answer_hop_decay = nullptr;
  CLI::Option* flag_validity_rate = nullptr;
  CLI::Option* misflag_rate = nullptr;
  CLI::Option* flag_local_prob = nullptr;
  CLI::Option* best_answer_prob = nullptr;
  CLI::Option* report_delay_median = nullptr;
  CLI::Option* slow_curation_fraction = nullptr;
};

//! Effective config: config file first, then explicit CLI overrides on top.
corpus::SyntheticConfig effective_synth_config(const SynthCli& s,
                                               const GlobalOptions& g,
                                               bool seed_given) {
  corpus::SyntheticConfig cfg;
  if (!s.config_file.empty()) {
    std::ifstream in(s.config_file, std::ios::binary);
    if (!in)
      throw ConfigError("cannot read config file '" + s.config_file + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    cfg = corpus::config_from_json_text(buf.str());
  }
  const auto apply = [](CLI::Option* opt, auto& dst, const auto& src) {
    if (opt->count() > 0) dst = src;
  };
  apply(s.users, cfg.n_users, s.cfg.n_users);
  apply(s.follow_degree_exponent, cfg.follow_degree_exponent,
        s.cfg.follow_degree_exponent);
  apply(s.homophily_strength, cfg.homophily_strength, s.cfg.homophily_strength);
  apply(s.deviant_fraction, cfg.deviant_fraction, s.cfg.deviant_fraction);
  apply(s.suspended_fraction, cfg.suspended_fraction, s.cfg.suspended_fraction);
  apply(s.stealth_fraction, cfg.stealth_fraction, s.cfg.stealth_fraction);
  apply(s.question_rate, cfg.question_rate, s.cfg.question_rate);
  apply(s.answer_rate, cfg.answer_rate, s.cfg.answer_rate);
  apply(s.activity_tail_exponent, cfg.activity_tail_exponent,
        s.cfg.activity_tail_exponent);
  apply(s.activity_cap, cfg.activity_cap, s.cfg.activity_cap);
  apply(s.answer_hop_base, cfg.answer_hop_base, s.cfg.answer_hop_base);
  apply(s.answer_hop_decay, cfg.answer_hop_decay, s.cfg.answer_hop_decay);
  apply(s.flag_validity_rate, cfg.flag_validity_rate, s.cfg.flag_validity_rate);
  apply(s.misflag_rate, cfg.misflag_rate, s.cfg.misflag_rate);
  apply(s.flag_local_prob, cfg.flag_local_prob, s.cfg.flag_local_prob);
  apply(s.best_answer_prob, cfg.best_answer_prob, s.cfg.best_answer_prob);
  apply(s.report_delay_median, cfg.report_delay_median_s,
        s.cfg.report_delay_median_s);
  apply(s.slow_curation_fraction, cfg.slow_curation_fraction,
        s.cfg.slow_curation_fraction);
  // --seed beats a config-file seed; a config-file seed beats the default.
  if (seed_given) cfg.seed = g.seed;
  return cfg;
}

int run_synth(const SynthCli& s, const GlobalOptions& g, bool seed_given,
              const std::string& command) {
  const auto cfg = effective_synth_config(s, g, seed_given);
  corpus::validate_config(cfg);

  RunManifest m;
  m.command = command;
  m.config_json = corpus::config_to_json_text(cfg);
  m.seed = cfg.seed;
  m.threads = cqabuse::par::threads_count();
  if (!s.config_file.empty())
    m.input_hashes[fs::path(s.config_file).filename().string()] =
        cqabuse::hash_file(s.config_file);

  StageTimer timer;
  const auto c = corpus::generate_synthetic(cfg);
  timer.lap(m, "generate");

  const auto format = format_from_name(g.format);
  corpus::save_corpus(c, g.out_dir, format);
  for (const auto& name : corpus::corpus_file_names(format))
    m.output_hashes[name] = cqabuse::hash_file(fs::path(g.out_dir) / name);
  timer.lap(m, "write");
  cqabuse::save_manifest(m, fs::path(g.out_dir) / "manifest.json");

  std::cout << "synth: " << c.users.size() << " users, " << c.posts.size()
            << " posts, " << c.flags.size() << " flags, " << c.follows.size()
            << " follows -> " << g.out_dir << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeCli {
  std::string corpus_dir;
  std::string analysis;
  int max_hop = 4;
  std::uint64_t sample_size = 2000;  // 0 = every user
  int max_degree = 3;
  std::uint64_t x_min = 1;
  std::string path_direction = "reporter-to-reportee";
};

void analyze_network(const corpus::EventCorpus& c, std::uint64_t x_min,
                     RunOutputs& out) {
  struct Net {
    std::string name;
    DirectedGraph g;
  };
  std::vector<Net> nets;
  nets.push_back({"ff", corpus::build_ff_network(c)});
  nets.push_back({"an", corpus::build_activity_network(c)});

  std::string summary =
      "network,n_nodes,n_edges,reciprocity,n_weak_components,"
      "largest_component_frac,mean_local_clustering\n";
  std::string ccdf = "network,direction,degree,ccdf\n";
  std::string fits = "network,direction,alpha,x_min,n_tail\n";

  for (const auto& net : nets) {
    const auto& g = net.g;
    const auto n = g.num_nodes();
    const double rec = g.num_edges() > 0 ? gr::reciprocity(g) : 0.0;
    const auto parts = gr::weakly_connected_components(g);
    const std::size_t largest =
        parts.sizes.empty()
            ? 0
            : *std::max_element(parts.sizes.begin(), parts.sizes.end());
    const auto clustering = gr::local_clustering(g);
    double clus_sum = 0.0;
    for (double v : clustering) clus_sum += v;
    summary += net.name + ',' + fi(static_cast<std::int64_t>(n)) + ',' +
               fi(static_cast<std::int64_t>(g.num_edges())) + ',' + fd(rec) +
               ',' + fi(static_cast<std::int64_t>(parts.count)) + ',' +
               fd(n > 0 ? static_cast<double>(largest) / static_cast<double>(n)
                        : 0.0) +
               ',' + fd(n > 0 ? clus_sum / static_cast<double>(n) : 0.0) + '\n';

    for (const auto dir : {gr::Direction::in, gr::Direction::out}) {
      const std::string dir_name = dir == gr::Direction::in ? "in" : "out";
      const auto dist = gr::degree_distribution(g, dir);
      // CCDF over nodes at each distinct degree, scanning the histogram from
      // the top so P(D >= d) accumulates exactly once per bucket.
      std::uint64_t at_or_above = 0;
      std::vector<std::pair<std::uint64_t, double>> points(
          dist.histogram.size());
      for (std::size_t i = dist.histogram.size(); i-- > 0;) {
        at_or_above += dist.histogram[i].second;
        points[i] = {dist.histogram[i].first,
                     n > 0 ? static_cast<double>(at_or_above) /
                                 static_cast<double>(n)
                           : 0.0};
      }
      for (const auto& [degree, p] : points)
        ccdf += net.name + ',' + dir_name + ',' +
                fi(static_cast<std::int64_t>(degree)) + ',' + fd(p) + '\n';
      try {
        const auto fit = gr::fit_power_law(dist, x_min);
        fits += net.name + ',' + dir_name + ',' + fd(fit.alpha) + ',' +
                fd(fit.x_min) + ',' + fi(static_cast<std::int64_t>(fit.n_tail)) +
                '\n';
      } catch (const AnalysisError&) {
        // No fittable tail (fewer than 2 nodes at or above x_min): the fit
        // row is omitted rather than fabricated.
      }
    }
  }

  out.add("network_summary.csv", summary);
  out.add("degree_ccdf.csv", ccdf);
  out.add("power_law_fits.csv", fits);
}

void analyze_deviance(const corpus::EventCorpus& c, int max_degree,
                      RunOutputs& out) {
  const auto ledgers = corpus::aggregate_ledgers(c);
  const auto qm = dv::fit_flag_regression(ledgers, corpus::PostKind::question);
  const auto am = dv::fit_flag_regression(ledgers, corpus::PostKind::answer);
  const auto report = dv::deviance_scores(ledgers, qm, am);

  std::string models = "kind,alpha,beta,r_squared,n\n";
  models += "question," + fd(qm.alpha) + ',' + fd(qm.beta) + ',' +
            fd(qm.r_squared) + ',' + fi(static_cast<std::int64_t>(qm.n)) + '\n';
  models += "answer," + fd(am.alpha) + ',' + fd(am.beta) + ',' +
            fd(am.r_squared) + ',' + fi(static_cast<std::int64_t>(am.n)) + '\n';
  out.add("regression_models.csv", models);

  std::string per_user = "user_id,question_deviance,answer_deviance,total_deviance\n";
  for (const auto& u : report.per_user)
    per_user += u.user_id + ',' + fd(u.question_deviance) + ',' +
                fd(u.answer_deviance) + ',' +
                fd(u.question_deviance + u.answer_deviance) + '\n';
  out.add("deviance_report.csv", per_user);

  std::string corr = "x,y,r\n";
  for (const auto& e : dv::flag_activity_correlations(ledgers))
    corr += e.x_label + ',' + e.y_label + ',' + fd(e.r) + '\n';
  out.add("flag_correlations.csv", corr);

  std::string flagged = "kind,percentile,flagged_fraction\n";
  append_percentile_rows(
      flagged, "question",
      dv::flagged_fraction_distribution(ledgers, corpus::PostKind::question));
  append_percentile_rows(
      flagged, "answer",
      dv::flagged_fraction_distribution(ledgers, corpus::PostKind::answer));
  out.add("flagged_fraction.csv", flagged);

  // Suspension-probability curves for the three deviance rankings plus the
  // naive raw-flag-count ranking they are compared against.
  std::set<std::string> suspended;
  for (const auto& u : c.users)
    if (u.suspended) suspended.insert(u.user_id);
  std::vector<double> percents;
  for (int x = 1; x <= 100; ++x) percents.push_back(x);

  std::vector<std::pair<std::string, double>> by_q, by_a, by_total, by_qflags,
      by_aflags, by_flags;
  {
    std::size_t i = 0;
    for (const auto& [user_id, ledger] : ledgers) {
      const auto& u = report.per_user[i++];
      by_q.emplace_back(user_id, u.question_deviance);
      by_a.emplace_back(user_id, u.answer_deviance);
      by_total.emplace_back(user_id, u.question_deviance + u.answer_deviance);
      by_qflags.emplace_back(user_id,
                             static_cast<double>(ledger.q_flags_received));
      by_aflags.emplace_back(user_id,
                             static_cast<double>(ledger.a_flags_received));
      by_flags.emplace_back(user_id,
                            static_cast<double>(ledger.q_flags_received +
                                                ledger.a_flags_received));
    }
  }
  std::string curve = "rank_by,percent,probability\n";
  const auto emit_curve = [&](const std::string& name, const auto& scores) {
    for (const auto& pt :
         dv::suspension_probability_curve(scores, suspended, percents))
      curve += name + ',' + fd(pt.percent) + ',' + fd(pt.probability) + '\n';
  };
  emit_curve("question_deviance", by_q);
  emit_curve("answer_deviance", by_a);
  emit_curve("total_deviance", by_total);
  emit_curve("raw_question_flags", by_qflags);
  emit_curve("raw_answer_flags", by_aflags);
  emit_curve("raw_flags", by_flags);
  out.add("suspension_curve.csv", curve);

  // Cohort comparison: suspended accounts, non-suspended users whose activity
  // draws more valid flags than predicted (positive total deviance), and the
  // typical remainder.
  std::unordered_map<std::string, std::string> question_author;
  for (const auto& p : c.posts)
    if (p.kind == corpus::PostKind::question)
      question_author.emplace(p.post_id, p.author);
  std::unordered_map<std::string, std::int64_t> answers_received;
  for (const auto& p : c.posts) {
    if (p.kind != corpus::PostKind::answer) continue;
    const auto it = question_author.find(p.parent_question);
    if (it != question_author.end() && it->second != p.author)
      ++answers_received[it->second];
  }
  const auto ff = corpus::build_ff_network(c);

  struct CohortAgg {
    std::int64_t n = 0;
    double questions = 0, answers = 0, answers_recv = 0, best = 0, points = 0,
           valid_flags = 0, followers = 0, followees = 0;
  };
  std::map<std::string, CohortAgg> cohorts;
  {
    std::size_t i = 0;
    for (const auto& [user_id, ledger] : ledgers) {
      const auto& u = report.per_user[i++];
      const bool susp = suspended.count(user_id) > 0;
      const double total = u.question_deviance + u.answer_deviance;
      const std::string cohort =
          susp ? "suspended" : (total > 0 ? "deviant" : "typical");
      auto& agg = cohorts[cohort];
      ++agg.n;
      agg.questions += static_cast<double>(ledger.n_questions);
      agg.answers += static_cast<double>(ledger.n_answers);
      const auto recv = answers_received.find(user_id);
      if (recv != answers_received.end())
        agg.answers_recv += static_cast<double>(recv->second);
      agg.best += static_cast<double>(ledger.n_best_answers);
      agg.points += static_cast<double>(ledger.points);
      agg.valid_flags += static_cast<double>(ledger.q_flags_received_valid +
                                             ledger.a_flags_received_valid);
      if (const auto idx = ff.index_of(user_id)) {
        agg.followers += static_cast<double>(ff.in(*idx).size());
        agg.followees += static_cast<double>(ff.out(*idx).size());
      }
    }
  }
  std::string cohort_csv =
      "cohort,n_users,mean_questions,mean_answers,mean_answers_received,"
      "mean_best_answers,mean_points,mean_valid_flags_received,"
      "mean_followers,mean_followees\n";
  for (const auto& name : {"typical", "deviant", "suspended"}) {
    const auto it = cohorts.find(name);
    if (it == cohorts.end()) continue;
    const auto& a = it->second;
    const double n = static_cast<double>(a.n);
    cohort_csv += std::string(name) + ',' + fi(a.n) + ',' +
                  fd(a.questions / n) + ',' + fd(a.answers / n) + ',' +
                  fd(a.answers_recv / n) + ',' + fd(a.best / n) + ',' +
                  fd(a.points / n) + ',' + fd(a.valid_flags / n) + ',' +
                  fd(a.followers / n) + ',' + fd(a.followees / n) + '\n';
  }
  out.add("cohort_stats.csv", cohort_csv);

  std::string comparison = "kind,degree,r_squared,adjusted_r_squared,best\n";
  for (const auto kind : {corpus::PostKind::question, corpus::PostKind::answer}) {
    const auto cmp = dv::compare_regression_models(ledgers, kind, max_degree);
    const std::string kind_name =
        kind == corpus::PostKind::question ? "question" : "answer";
    for (const auto& fit : cmp.fits)
      comparison += kind_name + ',' + fi(fit.degree) + ',' + fd(fit.r_squared) +
                    ',' + fd(fit.adjusted_r_squared) + ',' +
                    (fit.degree == cmp.best_degree ? "1" : "0") + '\n';
  }
  out.add("regression_comparison.csv", comparison);
}

void analyze_homophily(const corpus::EventCorpus& c, const AnalyzeCli& a,
                       std::uint64_t seed, RunOutputs& out) {
  const auto ff = corpus::build_ff_network(c);
  const auto an = corpus::build_activity_network(c);
  const auto orientation = a.path_direction == "reportee-to-reporter"
                               ? gr::Orientation::forward
                               : gr::Orientation::reverse;
  const auto sample = [&](const DirectedGraph& g) {
    return a.sample_size == 0 ? g.num_nodes()
                              : static_cast<std::size_t>(a.sample_size);
  };

  const auto profile_csv = [&](const hp::DistanceProfile& p,
                               const std::string& prefix) {
    std::string rows;
    for (const auto& pt : p.points)
      rows += prefix + fi(pt.hop) + ',' + fd(pt.probability) + ',' +
              fi(static_cast<std::int64_t>(pt.n_users)) + '\n';
    return rows;
  };

  std::string answer_csv = "hop,probability,n_users\n";
  answer_csv += profile_csv(
      hp::answer_distance_profile(ff, c, a.max_hop, sample(ff),
                                  stage_seed(seed, 1)),
      "");
  out.add("answer_profile.csv", answer_csv);

  std::string flag_csv = "network,hop,probability,n_users\n";
  flag_csv += profile_csv(
      hp::flag_distance_profile(ff, c, a.max_hop, sample(ff),
                                stage_seed(seed, 2)),
      "ff,");
  flag_csv += profile_csv(
      hp::flag_distance_profile(an, c, a.max_hop, sample(an),
                                stage_seed(seed, 3)),
      "an,");
  out.add("flag_profile.csv", flag_csv);

  std::string hist_csv = "network,bucket,observed_pct,null_pct,n_pairs\n";
  const auto hist_rows = [&](const DirectedGraph& g, const std::string& name,
                             std::uint64_t s) {
    const auto obs = hp::report_distance_histogram(
        g, c.flags, hp::HistogramVariant::observed, a.max_hop, s, orientation);
    const auto null = hp::report_distance_histogram(
        g, c.flags, hp::HistogramVariant::null_model, a.max_hop, s,
        orientation);
    for (int h = 1; h <= a.max_hop; ++h)
      hist_csv += name + ',' + fi(h) + ',' + fd(obs.hop_pct[h - 1]) + ',' +
                  fd(null.hop_pct[h - 1]) + ',' +
                  fi(static_cast<std::int64_t>(obs.n_pairs)) + '\n';
    hist_csv += name + ",unreachable," + fd(obs.unreachable_pct) + ',' +
                fd(null.unreachable_pct) + ',' +
                fi(static_cast<std::int64_t>(obs.n_pairs)) + '\n';
  };
  hist_rows(ff, "ff", stage_seed(seed, 4));
  hist_rows(an, "an", stage_seed(seed, 5));
  out.add("report_histogram.csv", hist_csv);

  // Deviance scores indexed by node for assortativity / similarity profiles.
  const auto ledgers = corpus::aggregate_ledgers(c);
  const auto report = dv::deviance_scores(
      ledgers, dv::fit_flag_regression(ledgers, corpus::PostKind::question),
      dv::fit_flag_regression(ledgers, corpus::PostKind::answer));
  const auto node_scores = [&](const DirectedGraph& g) {
    std::array<std::vector<double>, 3> s;  // question, answer, total
    for (auto& v : s) v.assign(g.num_nodes(), 0.0);
    for (const auto& u : report.per_user) {
      const auto idx = g.index_of(u.user_id);
      if (!idx)
        throw AnalysisError("user " + u.user_id + " missing from the graph");
      s[0][*idx] = u.question_deviance;
      s[1][*idx] = u.answer_deviance;
      s[2][*idx] = u.question_deviance + u.answer_deviance;
    }
    return s;
  };
  const auto ff_scores = node_scores(ff);
  const auto an_scores = node_scores(an);

  static const char* kAttrNames[3] = {"question_deviance", "answer_deviance",
                                      "total_deviance"};
  std::string assort_csv = "network,attribute,r\n";
  for (int k = 0; k < 3; ++k)
    assort_csv += std::string("ff,") + kAttrNames[k] + ',' +
                  fd(hp::attribute_assortativity(ff, ff_scores[k])) + '\n';
  for (int k = 0; k < 3; ++k)
    assort_csv += std::string("an,") + kAttrNames[k] + ',' +
                  fd(hp::attribute_assortativity(an, an_scores[k])) + '\n';
  out.add("assortativity.csv", assort_csv);

  // Similarity-by-hop at 1 and 2 standard deviations of total deviance.
  const auto& total = ff_scores[2];
  double mean = 0.0;
  for (double v : total) mean += v;
  mean /= static_cast<double>(total.size());
  double ss = 0.0;
  for (double v : total) ss += (v - mean) * (v - mean);
  const double sd = total.size() > 1
                        ? std::sqrt(ss / static_cast<double>(total.size() - 1))
                        : 0.0;
  std::string sim_csv = "delta_sd,hop,probability,n_users\n";
  for (int k = 1; k <= 2; ++k)
    sim_csv += profile_csv(
        hp::deviance_similarity_profile(ff, total, k * sd, a.max_hop,
                                        sample(ff),
                                        stage_seed(seed, 5 + static_cast<std::uint64_t>(k))),
        fi(k) + ",");
  out.add("similarity_profile.csv", sim_csv);
}

void analyze_timing(const corpus::EventCorpus& c, RunOutputs& out) {
  std::string cdf_csv = "measure,kind,percentile,seconds\n";
  std::string summary_csv =
      "measure,kind,n,median_s,within_1_day,within_3_days\n";
  for (const auto kind : {corpus::PostKind::question, corpus::PostKind::answer}) {
    const std::string kind_name =
        kind == corpus::PostKind::question ? "question" : "answer";
    const auto deletion = tm::deletion_delay_cdf(c, kind);
    const auto reaction = tm::report_time_to_flag_cdf(c, kind);
    append_percentile_rows(cdf_csv, "deletion_delay," + kind_name, deletion);
    append_percentile_rows(cdf_csv, "report_delay," + kind_name, reaction);
    for (const auto& [measure, dist] :
         {std::pair<std::string, const cqabuse::stats::EmpiricalDistribution&>(
              "deletion_delay", deletion),
          std::pair<std::string, const cqabuse::stats::EmpiricalDistribution&>(
              "report_delay", reaction)}) {
      const auto s = tm::summarize_delays(dist);
      summary_csv += measure + ',' + kind_name + ',' +
                     fi(static_cast<std::int64_t>(s.n)) + ',' +
                     fd(s.median_s) + ',' + fd(s.within_1_day) + ',' +
                     fd(s.within_3_days) + '\n';
    }
  }
  out.add("timing_cdf.csv", cdf_csv);
  out.add("timing_summary.csv", summary_csv);
}

int run_analyze(const AnalyzeCli& a, const GlobalOptions& g,
                const std::string& command) {
  if (a.max_hop < 1) throw ConfigError("max-hop must be >= 1");
  if (a.max_degree < 1) throw ConfigError("max-degree must be >= 1");

  RunManifest m;
  m.command = command;
  m.seed = g.seed;
  m.threads = cqabuse::par::threads_count();
  {
    ordered_json cfg;
    cfg["analysis"] = a.analysis;
    cfg["max_hop"] = a.max_hop;
    cfg["sample_size"] = a.sample_size;
    cfg["max_degree"] = a.max_degree;
    cfg["x_min"] = a.x_min;
    cfg["path_direction"] = a.path_direction;
    m.config_json = cfg.dump(2);
  }

  StageTimer timer;
  const auto c = load_input_corpus(a.corpus_dir, m);
  timer.lap(m, "load");

  RunOutputs out(g.out_dir);
  if (a.analysis == "network")
    analyze_network(c, a.x_min, out);
  else if (a.analysis == "deviance")
    analyze_deviance(c, a.max_degree, out);
  else if (a.analysis == "homophily")
    analyze_homophily(c, a, g.seed, out);
  else if (a.analysis == "timing")
    analyze_timing(c, out);
  else
    throw ConfigError("unknown analysis '" + a.analysis +
                      "' (valid: network, deviance, homophily, timing)");
  timer.lap(m, a.analysis);

  const auto n_files = out.file_count();
  out.commit(std::move(m), timer);
  std::cout << "analyze " << a.analysis << ": wrote " << n_files
            << " files -> " << g.out_dir << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// learn

struct LearnCli {
  std::string corpus_dir;
  std::string algo = "gbt";
  ml::Hyperparams hp;
  double test_fraction = 0.4;
  bool no_balance = false;
  double rose_shrink = 0.0;
  bool cv = false;
  int cv_folds = 10;
  int cv_repeats = 10;
  bool importance = false;
  int importance_folds = 3;
  int importance_repeats = 1;
  bool dump_dataset = false;
};

void print_eval(const ml::EvalReport& rep) {
  std::cout << std::fixed << std::setprecision(2);
  std::cout << "accuracy=" << rep.accuracy << " precision=" << rep.precision
            << " recall=" << rep.recall << " f1=" << rep.f1 << " (n=" << rep.n
            << ")\n";
  std::cout << "confusion (% of actual class):\n";
  std::cout << "  pred_fair:      fair=" << rep.confusion[0][0]
            << " suspended=" << rep.confusion[0][1] << "\n";
  std::cout << "  pred_suspended: fair=" << rep.confusion[1][0]
            << " suspended=" << rep.confusion[1][1] << "\n";
}

int run_learn(const LearnCli& l, const GlobalOptions& g,
              const std::string& command) {
  const auto algo = ml::algo_from_name(l.algo);
  ml::validate_hyperparams(l.hp);
  if (!(l.test_fraction > 0.0 && l.test_fraction < 1.0))
    throw ConfigError("test-fraction must be in (0, 1)");
  if (l.rose_shrink < 0.0) throw ConfigError("rose-shrink must be >= 0");
  if (l.cv && (l.cv_folds < 2 || l.cv_repeats < 1))
    throw ConfigError("cv requires folds >= 2 and repeats >= 1");
  if (l.importance && (l.importance_folds < 2 || l.importance_repeats < 1))
    throw ConfigError("importance requires folds >= 2 and repeats >= 1");

  RunManifest m;
  m.command = command;
  m.seed = g.seed;
  m.threads = cqabuse::par::threads_count();
  {
    ordered_json cfg;
    cfg["algo"] = l.algo;
    cfg["test_fraction"] = l.test_fraction;
    cfg["balance"] = !l.no_balance;
    cfg["rose_shrink"] = l.rose_shrink;
    cfg["nb_var_smoothing"] = l.hp.nb_var_smoothing;
    cfg["logistic_rounds"] = l.hp.logistic_rounds;
    cfg["logistic_iterations"] = l.hp.logistic_iterations;
    cfg["logistic_learning_rate"] = l.hp.logistic_learning_rate;
    cfg["logistic_tolerance"] = l.hp.logistic_tolerance;
    cfg["knn_k"] = l.hp.knn_k;
    cfg["gbt_trees"] = l.hp.gbt_trees;
    cfg["gbt_depth"] = l.hp.gbt_depth;
    cfg["gbt_learning_rate"] = l.hp.gbt_learning_rate;
    cfg["gbt_subsample"] = l.hp.gbt_subsample;
    cfg["cv"] = l.cv;
    cfg["cv_folds"] = l.cv_folds;
    cfg["cv_repeats"] = l.cv_repeats;
    cfg["importance"] = l.importance;
    cfg["importance_folds"] = l.importance_folds;
    cfg["importance_repeats"] = l.importance_repeats;
    m.config_json = cfg.dump(2);
  }

  StageTimer timer;
  const auto c = load_input_corpus(l.corpus_dir, m);
  timer.lap(m, "load");

  const auto ledgers = corpus::aggregate_ledgers(c);
  const auto report = dv::deviance_scores(
      ledgers, dv::fit_flag_regression(ledgers, corpus::PostKind::question),
      dv::fit_flag_regression(ledgers, corpus::PostKind::answer));
  const auto ff = corpus::build_ff_network(c);
  const auto features = ml::extract_features(c, ledgers, report, ff);
  const auto data = ml::build_labeled_dataset(features, c);
  timer.lap(m, "features");

  RunOutputs out(g.out_dir);
  if (l.dump_dataset) out.add("dataset.csv", ml::dataset_to_csv(data));

  const auto split =
      ml::train_test_split(data, l.test_fraction, stage_seed(g.seed, 1));
  const auto train_set =
      l.no_balance ? split.train
                   : ml::rose_balance(split.train, 0.5, l.rose_shrink,
                                      stage_seed(g.seed, 2));
  const auto model = ml::train(train_set, algo, l.hp, stage_seed(g.seed, 3));
  timer.lap(m, "train");

  const auto pred = ml::predict(model, split.test);
  const auto rep = ml::evaluate(pred.labels, split.test.labels);
  timer.lap(m, "evaluate");

  std::cout << "learn: algo=" << l.algo << " features=" << data.width()
            << " train=" << split.train.n_rows()
            << (l.no_balance ? ""
                             : " (balanced " +
                                   std::to_string(train_set.n_rows()) + ")")
            << " test=" << split.test.n_rows() << "\n";
  print_eval(rep);

  std::string metrics =
      "algo,n_train,n_train_balanced,n_test,accuracy,precision,recall,f1\n";
  metrics += l.algo + ',' + fi(static_cast<std::int64_t>(split.train.n_rows())) +
             ',' + fi(static_cast<std::int64_t>(train_set.n_rows())) + ',' +
             fi(static_cast<std::int64_t>(split.test.n_rows())) + ',' +
             fd(rep.accuracy) + ',' + fd(rep.precision) + ',' + fd(rep.recall) +
             ',' + fd(rep.f1) + '\n';
  out.add("metrics.csv", metrics);

  std::string confusion = "predicted,actual_fair,actual_suspended\n";
  confusion += "fair," + fd(rep.confusion[0][0]) + ',' +
               fd(rep.confusion[0][1]) + '\n';
  confusion += "suspended," + fd(rep.confusion[1][0]) + ',' +
               fd(rep.confusion[1][1]) + '\n';
  out.add("confusion.csv", confusion);

  out.add("model.json", ml::model_to_json_text(model));

  if (l.cv) {
    const auto cvr =
        ml::cross_validate(data, algo, l.hp, l.cv_folds, l.cv_repeats,
                           stage_seed(g.seed, 4), !l.no_balance, l.rose_shrink);
    timer.lap(m, "cross_validate");
    std::string cv_csv = "metric,mean,stddev\n";
    const auto row = [&](const std::string& name, double mean, double sd) {
      cv_csv += name + ',' + fd(mean) + ',' + fd(sd) + '\n';
    };
    row("accuracy", cvr.mean.accuracy, cvr.stddev.accuracy);
    row("precision", cvr.mean.precision, cvr.stddev.precision);
    row("recall", cvr.mean.recall, cvr.stddev.recall);
    row("f1", cvr.mean.f1, cvr.stddev.f1);
    static const char* kLabels[2] = {"fair", "suspended"};
    for (int p = 0; p < 2; ++p)
      for (int t = 0; t < 2; ++t)
        row(std::string("confusion_pred_") + kLabels[p] + "_actual_" +
                kLabels[t],
            cvr.mean.confusion[p][t], cvr.stddev.confusion[p][t]);
    out.add("cv_metrics.csv", cv_csv);
    std::cout << std::fixed << std::setprecision(2) << "cv (" << l.cv_folds
              << "x" << l.cv_repeats << "): accuracy=" << cvr.mean.accuracy
              << "±" << cvr.stddev.accuracy
              << " recall=" << cvr.mean.recall << "±" << cvr.stddev.recall
              << "\n";
  }

  if (l.importance) {
    const ml::ImportanceConfig icfg{.folds = l.importance_folds,
                                    .repeats = l.importance_repeats,
                                    .balance = !l.no_balance,
                                    .rose_shrink = l.rose_shrink};
    const auto ranking =
        ml::feature_importance(data, algo, l.hp, stage_seed(g.seed, 5), icfg);
    timer.lap(m, "importance");
    std::string imp_csv = "rank,feature,importance\n";
    for (const auto& f : ranking)
      imp_csv += fi(f.rank) + ',' + f.feature + ',' + fd(f.importance) + '\n';
    out.add("importance.csv", imp_csv);
  }

  out.commit(std::move(m), timer);
  return 0;
}

// ---------------------------------------------------------------------------
// report

struct ReportCli {
  std::string manifest_path;
};

int run_report(const ReportCli& r, const GlobalOptions& g) {
  const fs::path path = r.manifest_path.empty()
                            ? fs::path(g.out_dir) / "manifest.json"
                            : fs::path(r.manifest_path);
  const auto m = cqabuse::load_manifest(path);
  std::cout << "manifest: " << path.string() << "\n";
  std::cout << "tool_version: " << m.tool_version << "\n";
  std::cout << "command: " << m.command << "\n";
  std::cout << "seed: " << m.seed << "  threads: " << m.threads << "\n";
  std::cout << "config: " << m.config_json << "\n";
  std::cout << "inputs (" << m.input_hashes.size() << "):\n";
  for (const auto& [name, hash] : m.input_hashes)
    std::cout << "  " << hash << "  " << name << "\n";
  std::cout << "outputs (" << m.output_hashes.size() << "):\n";
  for (const auto& [name, hash] : m.output_hashes)
    std::cout << "  " << hash << "  " << name << "\n";
  std::cout << "stages:\n";
  std::cout << std::fixed << std::setprecision(3);
  for (const auto& t : m.stage_timings)
    std::cout << "  " << t.stage << ": " << t.wall_seconds << " s\n";
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"community Q&A abuse analysis toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cqabuse::kToolVersion));

  GlobalOptions g;
  auto* seed_opt = app.add_option("--seed", g.seed, "root RNG seed")
                       ->envname("CQABUSE_SEED")
                       ->capture_default_str();
  app.add_option("--threads", g.threads,
                 "OpenMP worker count (0 = runtime default)")
      ->envname("CQABUSE_THREADS")
      ->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "directory for outputs + manifest")
      ->envname("CQABUSE_OUT_DIR")
      ->capture_default_str();
  app.add_option("--format", g.format, "corpus file format written by synth")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->envname("CQABUSE_FORMAT")
      ->capture_default_str();

  auto* synth = app.add_subcommand(
      "synth", "generate a seeded synthetic corpus with planted abuse");
  synth->fallthrough();
  SynthCli sc;
  synth->add_option("--config", sc.config_file,
                    "JSON config file (CLI flags override it)");
  sc.users = synth->add_option("--users", sc.cfg.n_users, "number of users")
                 ->capture_default_str();
  sc.follow_degree_exponent =
      synth
          ->add_option("--follow-degree-exponent",
                       sc.cfg.follow_degree_exponent,
                       "out-degree power-law density exponent")
          ->capture_default_str();
  sc.homophily_strength =
      synth
          ->add_option("--homophily-strength", sc.cfg.homophily_strength,
                       "probability a follow stays within the same cohort")
          ->capture_default_str();
  sc.deviant_fraction =
      synth
          ->add_option("--deviant-fraction", sc.cfg.deviant_fraction,
                       "share of users planted as content abusers")
          ->capture_default_str();
  sc.suspended_fraction =
      synth
          ->add_option("--suspended-fraction", sc.cfg.suspended_fraction,
                       "share of users marked suspended")
          ->capture_default_str();
  sc.stealth_fraction =
      synth
          ->add_option("--stealth-fraction", sc.cfg.stealth_fraction,
                       "share of suspended users receiving zero flags")
          ->capture_default_str();
  sc.question_rate = synth
                         ->add_option("--question-rate", sc.cfg.question_rate,
                                      "Poisson rate scale for questions")
                         ->capture_default_str();
  sc.answer_rate =
      synth
          ->add_option("--answer-rate", sc.cfg.answer_rate,
                       "Poisson rate scale for background answers")
          ->capture_default_str();
  sc.activity_tail_exponent =
      synth
          ->add_option("--activity-tail-exponent",
                       sc.cfg.activity_tail_exponent,
                       "per-user activity multiplier tail exponent")
          ->capture_default_str();
  sc.activity_cap = synth
                        ->add_option("--activity-cap", sc.cfg.activity_cap,
                                     "cap on the activity multiplier")
                        ->capture_default_str();
  sc.answer_hop_base =
      synth
          ->add_option("--answer-hop-base", sc.cfg.answer_hop_base,
                       "P(1-hop follower answers a question)")
          ->capture_default_str();
  sc.answer_hop_decay =
      synth
          ->add_option("--answer-hop-decay", sc.cfg.answer_hop_decay,
                       "per-hop decay of the answer probability")
          ->capture_default_str();
  sc.flag_validity_rate =
      synth
          ->add_option("--flag-validity-rate", sc.cfg.flag_validity_rate,
                       "P(a flag is upheld by inspection)")
          ->capture_default_str();
  sc.misflag_rate = synth
                        ->add_option("--misflag-rate", sc.cfg.misflag_rate,
                                     "P(a non-abusive post draws one flag)")
                        ->capture_default_str();
  sc.flag_local_prob =
      synth
          ->add_option("--flag-local-prob", sc.cfg.flag_local_prob,
                       "P(reporter comes from the local pool)")
          ->capture_default_str();
  sc.best_answer_prob =
      synth
          ->add_option("--best-answer-prob", sc.cfg.best_answer_prob,
                       "P(an answered question selects a best answer)")
          ->capture_default_str();
  sc.report_delay_median =
      synth
          ->add_option("--report-delay-median", sc.cfg.report_delay_median_s,
                       "median seconds from post to report")
          ->capture_default_str();
  sc.slow_curation_fraction =
      synth
          ->add_option("--slow-curation-fraction",
                       sc.cfg.slow_curation_fraction,
                       "share of deletions taking 1..3 days")
          ->capture_default_str();

  auto* analyze = app.add_subcommand(
      "analyze", "run an analysis suite over a corpus, emitting CSV files");
  analyze->fallthrough();
  AnalyzeCli ac;
  analyze->add_option("--corpus", ac.corpus_dir, "corpus directory")
      ->required();
  analyze
      ->add_option("--analysis", ac.analysis,
                   "which suite: network, deviance, homophily, timing")
      ->required()
      ->check(CLI::IsMember({"network", "deviance", "homophily", "timing"}));
  analyze
      ->add_option("--max-hop", ac.max_hop,
                   "deepest hop for distance profiles and histograms")
      ->capture_default_str();
  analyze
      ->add_option("--sample-size", ac.sample_size,
                   "users sampled per distance profile (0 = all)")
      ->capture_default_str();
  analyze
      ->add_option("--max-degree", ac.max_degree,
                   "highest polynomial degree in the regression comparison")
      ->capture_default_str();
  analyze
      ->add_option("--x-min", ac.x_min, "power-law fit tail cutoff degree")
      ->capture_default_str();
  analyze
      ->add_option("--path-direction", ac.path_direction,
                   "report histogram distance direction")
      ->check(CLI::IsMember({"reporter-to-reportee", "reportee-to-reporter"}))
      ->capture_default_str();

  auto* learn = app.add_subcommand(
      "learn", "train and evaluate a fair-vs-suspended classifier");
  learn->fallthrough();
  LearnCli lc;
  learn->add_option("--corpus", lc.corpus_dir, "corpus directory")->required();
  learn
      ->add_option("--algo", lc.algo,
                   "algorithm: naive_bayes, logistic, knn, gbt")
      ->capture_default_str();
  learn
      ->add_option("--test-fraction", lc.test_fraction,
                   "held-out share per class")
      ->capture_default_str();
  learn->add_flag("--no-balance", lc.no_balance,
                  "train on the raw class mix (skip rebalancing)");
  learn
      ->add_option("--rose-shrink", lc.rose_shrink,
                   "smoothed-bootstrap bandwidth scale (0 = plain copies)")
      ->capture_default_str();
  learn->add_option("--nb-var-smoothing", lc.hp.nb_var_smoothing,
                    "naive-bayes variance floor fraction")
      ->capture_default_str();
  learn->add_option("--logistic-rounds", lc.hp.logistic_rounds,
                    "boosted logistic reweighting rounds")
      ->capture_default_str();
  learn->add_option("--logistic-iterations", lc.hp.logistic_iterations,
                    "gradient-descent iterations per round")
      ->capture_default_str();
  learn->add_option("--logistic-learning-rate", lc.hp.logistic_learning_rate,
                    "gradient-descent step size")
      ->capture_default_str();
  learn->add_option("--logistic-tolerance", lc.hp.logistic_tolerance,
                    "gradient-descent stop threshold")
      ->capture_default_str();
  learn->add_option("--knn-k", lc.hp.knn_k, "nearest-neighbor count")
      ->capture_default_str();
  learn->add_option("--gbt-trees", lc.hp.gbt_trees, "boosting stages")
      ->capture_default_str();
  learn->add_option("--gbt-depth", lc.hp.gbt_depth, "tree depth")
      ->capture_default_str();
  learn->add_option("--gbt-learning-rate", lc.hp.gbt_learning_rate,
                    "boosting shrinkage")
      ->capture_default_str();
  learn->add_option("--gbt-subsample", lc.hp.gbt_subsample,
                    "per-stage row subsample fraction")
      ->capture_default_str();
  learn->add_flag("--cv", lc.cv, "also run repeated k-fold cross-validation");
  learn->add_option("--cv-folds", lc.cv_folds, "cross-validation folds")
      ->capture_default_str();
  learn->add_option("--cv-repeats", lc.cv_repeats, "cross-validation repeats")
      ->capture_default_str();
  learn->add_flag("--importance", lc.importance,
                  "also rank features by backwards elimination");
  learn
      ->add_option("--importance-folds", lc.importance_folds,
                   "folds for importance cross-validation")
      ->capture_default_str();
  learn
      ->add_option("--importance-repeats", lc.importance_repeats,
                   "repeats for importance cross-validation")
      ->capture_default_str();
  learn->add_flag("--dump-dataset", lc.dump_dataset,
                  "also write the labeled feature matrix as dataset.csv");

  auto* report = app.add_subcommand("report", "print a run manifest summary");
  report->fallthrough();
  ReportCli rc;
  report->add_option("--manifest", rc.manifest_path,
                     "manifest path (default <out-dir>/manifest.json)");

  const std::string command = command_line(argc, argv);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (g.threads < 0) throw ConfigError("threads must be >= 0");
    cqabuse::par::set_threads(g.threads);
    if (app.got_subcommand(synth))
      return run_synth(sc, g, seed_opt->count() > 0, command);
    if (app.got_subcommand(analyze)) return run_analyze(ac, g, command);
    if (app.got_subcommand(learn)) return run_learn(lc, g, command);
    return run_report(rc, g);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n"
              << "run 'cqabuse --help' for usage\n";
    return 2;
  } catch (const CorpusError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const AnalysisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const TrainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
