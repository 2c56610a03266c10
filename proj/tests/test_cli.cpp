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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cqabuse/manifest.hpp"
#include "cqabuse/models.hpp"
#include "doctest.h"

using namespace cqabuse;
namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch_root() {
  return fs::temp_directory_path() / "cqabuse_tests" / "cli";
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = scratch_root() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

//! Run the installed binary through the shell; `env_prefix` may carry
//! variable assignments like "CQABUSE_SEED=9 ".
CmdResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const fs::path io = scratch_root() / "io";
  fs::create_directories(io);
  const fs::path out_file = io / ("out" + std::to_string(counter) + ".txt");
  const fs::path err_file = io / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = env_prefix + "\"" + CQABUSE_BIN + "\" " + args +
                          " > " + out_file.string() + " 2> " +
                          err_file.string();
  const int status = std::system(cmd.c_str());
  CmdResult r;
  if (status >= 0 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char ch : text) n += ch == '\n' ? 1 : 0;
  return n;
}

//! Synthesize a small corpus once and reuse it across the analyze/learn cases.
const fs::path& shared_corpus() {
  static const fs::path dir = [] {
    const fs::path d = fresh_dir("corpus300");
    const auto r = run_cli("synth --users 300 --seed 9 --out-dir " + d.string());
    REQUIRE(r.exit_code == 0);
    return d;
  }();
  return dir;
}

}  // namespace

TEST_CASE("help and version exit cleanly") {
  const auto help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("synth") != std::string::npos);
  CHECK(help.out.find("analyze") != std::string::npos);
  const auto version = run_cli("--version");
  CHECK(version.exit_code == 0);
  CHECK(version.out.find(std::string(kToolVersion)) != std::string::npos);
}

TEST_CASE("synth writes the corpus files and a self-consistent manifest") {
  const auto dir = fresh_dir("synth_basic");
  const auto r =
      run_cli("synth --users 300 --out-dir " + dir.string() + " --threads 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("synth: 300 users") != std::string::npos);

  for (const auto* name :
       {"users.jsonl", "posts.jsonl", "flags.jsonl", "follows.jsonl",
        "manifest.json"})
    CHECK(fs::exists(dir / name));

  const auto m = load_manifest(dir / "manifest.json");
  CHECK(m.tool_version == kToolVersion);
  CHECK(m.seed == 42);  // default root seed
  CHECK(m.threads == 2);
  CHECK(m.command.find("cqabuse synth") == 0);
  CHECK(m.output_hashes.size() == 4);
  for (const auto& [name, hash] : m.output_hashes)
    CHECK(hash == hash_file(dir / name));
  CHECK_FALSE(m.stage_timings.empty());
}

TEST_CASE("synth honors the csv format switch") {
  const auto dir = fresh_dir("synth_csv");
  const auto r = run_cli("synth --users 120 --format csv --out-dir " +
                         dir.string());
  CHECK(r.exit_code == 0);
  for (const auto* name :
       {"users.csv", "posts.csv", "flags.csv", "follows.csv"})
    CHECK(fs::exists(dir / name));
  CHECK_FALSE(fs::exists(dir / "users.jsonl"));
}

TEST_CASE("identical seeds reproduce identical corpus bytes") {
  const auto d1 = fresh_dir("synth_seed_a");
  const auto d2 = fresh_dir("synth_seed_b");
  const auto d3 = fresh_dir("synth_seed_c");
  CHECK(run_cli("synth --users 200 --seed 9 --out-dir " + d1.string())
            .exit_code == 0);
  CHECK(run_cli("synth --users 200 --seed 9 --out-dir " + d2.string())
            .exit_code == 0);
  CHECK(run_cli("synth --users 200 --seed 10 --out-dir " + d3.string())
            .exit_code == 0);
  const auto m1 = load_manifest(d1 / "manifest.json");
  const auto m2 = load_manifest(d2 / "manifest.json");
  const auto m3 = load_manifest(d3 / "manifest.json");
  CHECK(m1.output_hashes == m2.output_hashes);
  CHECK(m1.output_hashes != m3.output_hashes);

  // The root seed can also arrive through the environment.
  const auto d4 = fresh_dir("synth_seed_env");
  CHECK(run_cli("synth --users 200 --out-dir " + d4.string(),
                "CQABUSE_SEED=9 ")
            .exit_code == 0);
  const auto m4 = load_manifest(d4 / "manifest.json");
  CHECK(m4.seed == 9);
  CHECK(m4.output_hashes == m1.output_hashes);
}

TEST_CASE("out-of-range generator knobs are rejected with exit code 2") {
  const auto dir = fresh_dir("synth_bad");
  const auto r = run_cli("synth --users 100 --deviant-fraction 1.5 --out-dir " +
                         dir.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("deviant_fraction") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "users.jsonl"));
}

TEST_CASE("unknown flags and subcommands fail parsing with exit code 2") {
  CHECK(run_cli("synth --not-a-flag 3").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("analyze deviance emits the expected CSV tables") {
  const auto out = fresh_dir("analyze_deviance");
  const auto r = run_cli("analyze --corpus " + shared_corpus().string() +
                         " --analysis deviance --out-dir " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("analyze deviance: wrote 7 files") != std::string::npos);

  // One row per user plus a header.
  CHECK(line_count(slurp(out / "deviance_report.csv")) == 301);
  // Six rankings x percent grid 1..100 plus a header.
  CHECK(line_count(slurp(out / "suspension_curve.csv")) == 601);
  for (const auto* name :
       {"regression_models.csv", "flag_correlations.csv",
        "flagged_fraction.csv", "cohort_stats.csv",
        "regression_comparison.csv"})
    CHECK(fs::exists(out / name));

  const auto m = load_manifest(out / "manifest.json");
  CHECK(m.output_hashes.size() == 7);
  CHECK(m.input_hashes.size() == 4);  // the corpus files that were read
}

TEST_CASE("analyze homophily emits profile and histogram tables") {
  const auto out = fresh_dir("analyze_homophily");
  const auto r = run_cli("analyze --corpus " + shared_corpus().string() +
                         " --analysis homophily --max-hop 3 --sample-size 100 " +
                         "--out-dir " + out.string());
  CHECK(r.exit_code == 0);
  // The answer profile carries one row per hop plus a header; the flag
  // profile covers both the follower and answer networks.
  CHECK(line_count(slurp(out / "answer_profile.csv")) == 4);
  CHECK(line_count(slurp(out / "flag_profile.csv")) == 7);
  for (const auto* name :
       {"report_histogram.csv", "assortativity.csv", "similarity_profile.csv"})
    CHECK(fs::exists(out / name));
}

TEST_CASE("analyze network and timing suites run end to end") {
  const auto net = fresh_dir("analyze_network");
  const auto rn = run_cli("analyze --corpus " + shared_corpus().string() +
                          " --analysis network --out-dir " + net.string());
  CHECK(rn.exit_code == 0);
  for (const auto* name :
       {"network_summary.csv", "degree_ccdf.csv", "power_law_fits.csv"})
    CHECK(fs::exists(net / name));

  const auto tim = fresh_dir("analyze_timing");
  const auto rt = run_cli("analyze --corpus " + shared_corpus().string() +
                          " --analysis timing --out-dir " + tim.string());
  CHECK(rt.exit_code == 0);
  for (const auto* name : {"timing_cdf.csv", "timing_summary.csv"})
    CHECK(fs::exists(tim / name));
}

TEST_CASE("analyze rejects unknown suites and missing corpora") {
  const auto out = fresh_dir("analyze_bad");
  CHECK(run_cli("analyze --corpus " + shared_corpus().string() +
                " --analysis nonsense --out-dir " + out.string())
            .exit_code == 2);
  const auto missing =
      run_cli("analyze --corpus /nonexistent/place --analysis network " +
              std::string("--out-dir ") + out.string());
  CHECK(missing.exit_code == 3);
  CHECK_FALSE(missing.err.empty());
}

TEST_CASE("learn trains, reports metrics, and writes a loadable model") {
  const auto out = fresh_dir("learn_gbt");
  const auto r = run_cli("learn --corpus " + shared_corpus().string() +
                         " --gbt-trees 30 --dump-dataset --out-dir " +
                         out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("learn: algo=gbt") != std::string::npos);
  CHECK(r.out.find("accuracy=") != std::string::npos);

  for (const auto* name :
       {"metrics.csv", "confusion.csv", "model.json", "dataset.csv"})
    CHECK(fs::exists(out / name));
  CHECK(line_count(slurp(out / "metrics.csv")) == 2);  // header + one row

  const auto model = learn::model_from_json_text(slurp(out / "model.json"));
  CHECK(model.algo == learn::Algo::gbt);
  CHECK(model.feature_names.size() == 29);
}

TEST_CASE("learn runs cross-validation and importance on demand") {
  const auto out = fresh_dir("learn_cv");
  const auto r = run_cli(
      "learn --corpus " + shared_corpus().string() +
      " --algo naive_bayes --cv --cv-folds 3 --cv-repeats 2 --out-dir " +
      out.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out / "cv_metrics.csv"));
  CHECK(r.out.find("cv (") != std::string::npos);
}

TEST_CASE("learn rejects unknown algorithms with exit code 2") {
  const auto out = fresh_dir("learn_bad");
  const auto r = run_cli("learn --corpus " + shared_corpus().string() +
                         " --algo forest --out-dir " + out.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("unknown algorithm") != std::string::npos);
}

TEST_CASE("report prints the manifest summary") {
  const auto r = run_cli("report --manifest " +
                         (shared_corpus() / "manifest.json").string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("tool_version: ") != std::string::npos);
  CHECK(r.out.find("seed: 9") != std::string::npos);
  CHECK(r.out.find("outputs (4)") != std::string::npos);
  CHECK(run_cli("report --manifest /nonexistent/manifest.json").exit_code == 3);
}
