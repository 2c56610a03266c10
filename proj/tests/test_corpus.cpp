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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cqabuse/corpus.hpp"
#include "cqabuse/errors.hpp"
#include "cqabuse/synth.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cqabuse;
namespace synth = cqabuse::corpus;
namespace fs = std::filesystem;

namespace {

corpus::EventCorpus sample_corpus() {
  corpus::EventCorpus c;
  c.users = {{"alice", 3, false, 0},
             {"bob", 1, true, 1},
             {"carol", 7, false, 2},
             {"dave", 2, false, 3}};
  corpus::PostEvent q1{"q1", "alice", corpus::PostKind::question, "", 100,
                       false, 0, 4, 1};
  corpus::PostEvent q2{"q2", "bob", corpus::PostKind::question, "", 150,
                       false, 0, 0, 2};
  corpus::PostEvent a1{"a1", "bob", corpus::PostKind::answer, "q1", 200,
                       true, 5, 7, 0};
  corpus::PostEvent a2{"a2", "carol", corpus::PostKind::answer, "q1", 260,
                       false, 0, 1, 0};
  corpus::PostEvent a3{"a3", "alice", corpus::PostKind::answer, "q2", 300,
                       false, 0, 0, 0};
  c.posts = {q1, q2, a1, a2, a3};
  corpus::FlagEvent f1{"carol", "bob", "a1", 400, true, 900};
  corpus::FlagEvent f2{"dave", "bob", "a1", 410, false, std::nullopt};
  corpus::FlagEvent f3{"alice", "bob", "q2", 500, true, 1400};
  c.flags = {f1, f2, f3};
  c.follows = {{"bob", "alice"}, {"carol", "alice"}, {"alice", "bob"}};
  return c;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cqabuse_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_corpus(const corpus::EventCorpus& a, const corpus::EventCorpus& b) {
  if (a.users.size() != b.users.size() || a.posts.size() != b.posts.size() ||
      a.flags.size() != b.flags.size() || a.follows.size() != b.follows.size())
    return false;
  for (std::size_t i = 0; i < a.users.size(); ++i) {
    const auto& x = a.users[i];
    const auto& y = b.users[i];
    if (x.user_id != y.user_id || x.level != y.level ||
        x.suspended != y.suspended || x.join_rank != y.join_rank)
      return false;
  }
  for (std::size_t i = 0; i < a.posts.size(); ++i) {
    const auto& x = a.posts[i];
    const auto& y = b.posts[i];
    if (x.post_id != y.post_id || x.author != y.author || x.kind != y.kind ||
        x.parent_question != y.parent_question || x.timestamp != y.timestamp ||
        x.best_answer != y.best_answer || x.answer_rating != y.answer_rating ||
        x.thumbs_up != y.thumbs_up || x.thumbs_down != y.thumbs_down)
      return false;
  }
  for (std::size_t i = 0; i < a.flags.size(); ++i) {
    const auto& x = a.flags[i];
    const auto& y = b.flags[i];
    if (x.reporter != y.reporter || x.reportee != y.reportee ||
        x.target_post != y.target_post || x.report_time != y.report_time ||
        x.valid != y.valid || x.deletion_time != y.deletion_time)
      return false;
  }
  for (std::size_t i = 0; i < a.follows.size(); ++i)
    if (a.follows[i].follower != b.follows[i].follower ||
        a.follows[i].followee != b.follows[i].followee)
      return false;
  return true;
}

bool any_issue_contains(const std::vector<std::string>& issues,
                        const std::string& needle) {
  return std::any_of(issues.begin(), issues.end(), [&](const std::string& s) {
    return s.find(needle) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("corpus file names are fixed per format") {
  const auto j = corpus::corpus_file_names(corpus::CorpusFormat::jsonl);
  CHECK(j == std::vector<std::string>{"users.jsonl", "posts.jsonl",
                                      "flags.jsonl", "follows.jsonl"});
  const auto c = corpus::corpus_file_names(corpus::CorpusFormat::csv_bundle);
  CHECK(c == std::vector<std::string>{"users.csv", "posts.csv", "flags.csv",
                                      "follows.csv"});
}

TEST_CASE("save/load round-trip preserves every field in both formats") {
  const auto c = sample_corpus();
  for (const auto format :
       {corpus::CorpusFormat::jsonl, corpus::CorpusFormat::csv_bundle}) {
    const bool jsonl = format == corpus::CorpusFormat::jsonl;
    const auto dir = fresh_dir(jsonl ? "roundtrip_jsonl" : "roundtrip_csv");
    corpus::save_corpus(c, dir, format);
    for (const auto& name : corpus::corpus_file_names(format))
      CHECK(fs::exists(dir / name));
    const auto back = corpus::load_corpus(dir, format);
    CHECK(same_corpus(c, back));
  }
}

TEST_CASE("save_corpus writes identical bytes on every call") {
  const auto c = sample_corpus();
  const auto d1 = fresh_dir("bytes_1");
  const auto d2 = fresh_dir("bytes_2");
  corpus::save_corpus(c, d1, corpus::CorpusFormat::jsonl);
  corpus::save_corpus(c, d2, corpus::CorpusFormat::jsonl);
  for (const auto& name : corpus::corpus_file_names(corpus::CorpusFormat::jsonl))
    CHECK(slurp(d1 / name) == slurp(d2 / name));
}

TEST_CASE("load_corpus reports the file and line of parse failures") {
  const auto dir = fresh_dir("parse_fail");
  corpus::save_corpus(sample_corpus(), dir, corpus::CorpusFormat::jsonl);
  std::ofstream(dir / "users.jsonl", std::ios::app) << "{not json\n";
  try {
    corpus::load_corpus(dir, corpus::CorpusFormat::jsonl);
    FAIL("expected CorpusError");
  } catch (const CorpusError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("users.jsonl") != std::string::npos);
    CHECK(msg.find("5") != std::string::npos);  // line 5 is the bad one
  }
}

TEST_CASE("load_corpus rejects missing directories and dangling references") {
  CHECK_THROWS_AS(corpus::load_corpus(fresh_dir("empty_dir") / "nope",
                                      corpus::CorpusFormat::jsonl),
                  CorpusError);

  // Dangling references are not a parse failure: the corpus loads but the
  // validator reports them.
  auto broken = sample_corpus();
  broken.posts[0].author = "ghost";
  const auto dir = fresh_dir("dangling");
  corpus::save_corpus(broken, dir, corpus::CorpusFormat::jsonl);
  const auto loaded = corpus::load_corpus(dir, corpus::CorpusFormat::jsonl);
  CHECK(loaded.posts[0].author == "ghost");
  CHECK(any_issue_contains(corpus::validate_corpus(loaded), "unknown author"));
}

TEST_CASE("validate_corpus passes a clean corpus and catches violations") {
  CHECK(corpus::validate_corpus(sample_corpus()).empty());

  auto c = sample_corpus();
  c.users[0].level = 9;
  c.users.push_back({"alice", 2, false, 9});       // duplicate id
  c.posts[1].answer_rating = 3;                    // rated question
  c.posts[2].parent_question = "q_missing";        // dangling parent
  c.flags[0].reportee = "carol";                   // not the post author
  c.flags[1].deletion_time = 999;                  // invalid flag with deletion
  c.flags[2].deletion_time = 1;                    // deletion before report
  c.follows.push_back({"bob", "alice"});           // duplicate follow edge
  c.follows.push_back({"dave", "dave"});           // self-follow
  const auto issues = corpus::validate_corpus(c);
  CHECK(any_issue_contains(issues, "outside 1..7"));
  CHECK(any_issue_contains(issues, "duplicate user_id"));
  CHECK(any_issue_contains(issues, "answer_rating is answer-only"));
  CHECK(any_issue_contains(issues, "does not exist"));
  CHECK(any_issue_contains(issues, "is not the author"));
  CHECK(any_issue_contains(issues, "invalid flag carries deletion_time"));
  CHECK(any_issue_contains(issues, "deletion_time precedes report_time"));
  CHECK(any_issue_contains(issues, "duplicate pair"));
  CHECK(any_issue_contains(issues, "self-follow"));
}

TEST_CASE("validate_corpus flags self-answers and double best answers") {
  auto c = sample_corpus();
  c.posts.push_back({"a_self", "alice", corpus::PostKind::answer, "q1", 500,
                     false, 0, 0, 0});
  c.posts.push_back({"a_best2", "dave", corpus::PostKind::answer, "q1", 600,
                     true, 4, 0, 0});
  const auto issues = corpus::validate_corpus(c);
  CHECK(any_issue_contains(issues, "self-answer"));
  CHECK(any_issue_contains(issues, "more than one best answer"));
}

TEST_CASE("ledger aggregation on a hand-checked corpus") {
  const auto ledgers = corpus::aggregate_ledgers(sample_corpus());
  REQUIRE(ledgers.size() == 4);

  // alice: 1 question (-5), 1 answer (+2), q1 has a best answer (+3) -> 0.
  const auto& alice = ledgers.at("alice");
  CHECK(alice.n_questions == 1);
  CHECK(alice.n_answers == 1);
  CHECK(alice.n_best_answers == 0);
  CHECK(alice.points == 0);
  CHECK(alice.thumbs_up_sum == 4);
  CHECK(alice.thumbs_down_sum == 1);
  CHECK(alice.q_flags_reported == 1);
  CHECK(alice.q_flags_reported_valid == 1);
  CHECK(alice.a_flags_received == 0);

  // bob: 1 question (-5), 1 best answer (+2+10) -> 7; all three flags hit him.
  const auto& bob = ledgers.at("bob");
  CHECK(bob.points == 7);
  CHECK(bob.n_best_answers == 1);
  CHECK(bob.award_ratings_sum == 5);
  CHECK(bob.a_flags_received == 2);
  CHECK(bob.a_flags_received_valid == 1);
  CHECK(bob.q_flags_received == 1);
  CHECK(bob.q_flags_received_valid == 1);
  CHECK(bob.n_flagged_answers == 1);  // a1 flagged twice but counted once
  CHECK(bob.n_flagged_questions == 1);

  // dave wrote nothing: all-zero except his one invalid answer flag report.
  const auto& dave = ledgers.at("dave");
  CHECK(dave.n_questions == 0);
  CHECK(dave.n_answers == 0);
  CHECK(dave.points == 0);
  CHECK(dave.a_flags_reported == 1);
  CHECK(dave.a_flags_reported_valid == 0);
}

TEST_CASE("ledger aggregation matches the event recount oracle at scale") {
  synth::SyntheticConfig cfg;
  cfg.n_users = 600;
  cfg.seed = 7;
  const auto c = synth::generate_synthetic(cfg);
  const auto got = corpus::aggregate_ledgers(c);
  const auto want = oracles::recount_ledgers_bruteforce(c);
  REQUIRE(got.size() == want.size());
  for (const auto& [id, w] : want) {
    const auto& g = got.at(id);
    CHECK(g.n_questions == w.n_questions);
    CHECK(g.n_answers == w.n_answers);
    CHECK(g.n_best_answers == w.n_best_answers);
    CHECK(g.points == w.points);
    CHECK(g.award_ratings_sum == w.award_ratings_sum);
    CHECK(g.thumbs_up_sum == w.thumbs_up_sum);
    CHECK(g.thumbs_down_sum == w.thumbs_down_sum);
    CHECK(g.q_flags_received == w.q_flags_received);
    CHECK(g.q_flags_received_valid == w.q_flags_received_valid);
    CHECK(g.q_flags_reported == w.q_flags_reported);
    CHECK(g.q_flags_reported_valid == w.q_flags_reported_valid);
    CHECK(g.a_flags_received == w.a_flags_received);
    CHECK(g.a_flags_received_valid == w.a_flags_received_valid);
    CHECK(g.a_flags_reported == w.a_flags_reported);
    CHECK(g.a_flags_reported_valid == w.a_flags_reported_valid);
    CHECK(g.n_flagged_questions == w.n_flagged_questions);
    CHECK(g.n_flagged_answers == w.n_flagged_answers);
  }
}

TEST_CASE("follow network covers all users, activity network links answerers") {
  const auto c = sample_corpus();
  const auto ff = corpus::build_ff_network(c);
  CHECK(ff.num_nodes() == 4);  // dave has no follows but is still a node
  CHECK(ff.num_edges() == 3);
  CHECK(ff.has_edge(*ff.index_of("bob"), *ff.index_of("alice")));
  CHECK_FALSE(ff.has_edge(*ff.index_of("alice"), *ff.index_of("carol")));

  const auto an = corpus::build_activity_network(c);
  CHECK(an.num_nodes() == 4);
  // bob answered alice's q1, carol answered q1, alice answered bob's q2.
  CHECK(an.num_edges() == 3);
  CHECK(an.has_edge(*an.index_of("bob"), *an.index_of("alice")));
  CHECK(an.has_edge(*an.index_of("carol"), *an.index_of("alice")));
  CHECK(an.has_edge(*an.index_of("alice"), *an.index_of("bob")));
}

TEST_CASE("activity network collapses repeats and skips self-answers") {
  auto c = sample_corpus();
  // A second bob answer on q1 must not add a second edge; a self-answer by
  // alice on her own question must add none.
  c.posts.push_back({"a4", "bob", corpus::PostKind::answer, "q1", 700, false,
                     0, 0, 0});
  c.posts.push_back({"a5", "alice", corpus::PostKind::answer, "q1", 800, false,
                     0, 0, 0});
  const auto an = corpus::build_activity_network(c);
  CHECK(an.num_edges() == 3);
}
