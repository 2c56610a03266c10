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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cqabuse/graph.hpp"

namespace cqabuse::corpus {

enum class PostKind { question, answer };

struct UserRecord {
  std::string user_id;
  int level = 1;  // 1..7
  bool suspended = false;
  std::int64_t join_rank = 0;  // ordering only
};

struct PostEvent {
  std::string post_id;
  std::string author;
  PostKind kind = PostKind::question;
  std::string parent_question;  // empty for questions
  std::int64_t timestamp = 0;   // seconds since corpus epoch
  bool best_answer = false;     // answers only
  int answer_rating = 0;        // 0 = unrated; 1..5 only when best_answer
  std::int64_t thumbs_up = 0;
  std::int64_t thumbs_down = 0;
};

struct FlagEvent {
  std::string reporter;
  std::string reportee;  // must equal the target post's author
  std::string target_post;
  std::int64_t report_time = 0;
  bool valid = false;
  std::optional<std::int64_t> deletion_time;  // present iff valid
};

struct FollowEdge {
  std::string follower;
  std::string followee;
};

struct EventCorpus {
  std::vector<UserRecord> users;
  std::vector<PostEvent> posts;
  std::vector<FlagEvent> flags;
  std::vector<FollowEdge> follows;
};

//! Per-user aggregate counters.  All counts are non-negative; points is signed
//! because the platform scoring (-5 per question asked, +3 back when a best
//! answer is chosen, +2 per answer, +10 per best answer) can go below zero.
struct UserLedger {
  std::int64_t n_questions = 0;
  std::int64_t n_answers = 0;
  std::int64_t n_best_answers = 0;
  std::int64_t points = 0;
  std::int64_t award_ratings_sum = 0;
  std::int64_t thumbs_up_sum = 0;
  std::int64_t thumbs_down_sum = 0;
  std::int64_t q_flags_received = 0;
  std::int64_t q_flags_received_valid = 0;
  std::int64_t q_flags_reported = 0;
  std::int64_t q_flags_reported_valid = 0;
  std::int64_t a_flags_received = 0;
  std::int64_t a_flags_received_valid = 0;
  std::int64_t a_flags_reported = 0;
  std::int64_t a_flags_reported_valid = 0;
  std::int64_t n_flagged_questions = 0;  // own questions with >=1 flag
  std::int64_t n_flagged_answers = 0;    // own answers with >=1 flag
};

using LedgerMap = std::map<std::string, UserLedger>;

enum class CorpusFormat { jsonl, csv_bundle };

//! Load a corpus directory: users/posts/flags/follows as .jsonl or .csv.
//! Throws CorpusError with file name and line number on parse problems and on
//! dangling references (unknown author, missing parent question, ...).
EventCorpus load_corpus(const std::filesystem::path& dir, CorpusFormat format);

//! Write the four entity files in the requested format.  Deterministic bytes
//! for a given corpus.
void save_corpus(const EventCorpus& corpus, const std::filesystem::path& dir,
                 CorpusFormat format);

//! Entity file names for a format, in fixed order users, posts, flags, follows.
std::vector<std::string> corpus_file_names(CorpusFormat format);

//! Full invariant sweep (referential integrity, enum constraints, flag/post
//! consistency, follow-edge uniqueness...).  Returns human-readable issues;
//! empty means the corpus is valid.
std::vector<std::string> validate_corpus(const EventCorpus& corpus);

//! Aggregate per-user ledgers.  Every user gets an entry (all-zero when the
//! user produced no events).  A post counts as "flagged" once no matter how
//! many flag events target it.
LedgerMap aggregate_ledgers(const EventCorpus& corpus);

//! Follower->followee social graph over all users.
DirectedGraph build_ff_network(const EventCorpus& corpus);

//! Answerer->asker interaction graph over all users: one edge per ordered
//! pair with at least one answer interaction; self-answers are excluded.
DirectedGraph build_activity_network(const EventCorpus& corpus);

}  // namespace cqabuse::corpus
