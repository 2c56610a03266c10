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

#include "cqabuse/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "cqabuse/csv.hpp"
#include "cqabuse/errors.hpp"

namespace cqabuse::corpus {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string loc(const std::string& file, std::size_t line) {
  return file + ":" + std::to_string(line);
}

json parse_json_line(const std::string& file, std::size_t line_no,
                     const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded())
    throw CorpusError(loc(file, line_no) + ": malformed JSON record");
  if (!j.is_object())
    throw CorpusError(loc(file, line_no) + ": record is not a JSON object");
  return j;
}

template <typename T>
T field(const json& j, const char* name, const std::string& where) {
  if (!j.contains(name))
    throw CorpusError(where + ": missing field '" + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw CorpusError(where + ": field '" + name + "' has the wrong type");
  }
}

PostKind parse_kind(const std::string& s, const std::string& where) {
  if (s == "question") return PostKind::question;
  if (s == "answer") return PostKind::answer;
  throw CorpusError(where + ": kind must be 'question' or 'answer', got '" + s + "'");
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open '" + path.string() + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

EventCorpus load_jsonl(const std::filesystem::path& dir) {
  EventCorpus c;
  {
    const std::string file = "users.jsonl";
    std::size_t n = 0;
    for (const auto& line : read_lines(dir / file)) {
      ++n;
      if (line.empty()) continue;
      const json j = parse_json_line(file, n, line);
      const std::string where = loc(file, n);
      UserRecord u;
      u.user_id = field<std::string>(j, "user_id", where);
      u.level = field<int>(j, "level", where);
      u.suspended = field<bool>(j, "suspended", where);
      u.join_rank = field<std::int64_t>(j, "join_rank", where);
      c.users.push_back(std::move(u));
    }
  }
  {
    const std::string file = "posts.jsonl";
    std::size_t n = 0;
    for (const auto& line : read_lines(dir / file)) {
      ++n;
      if (line.empty()) continue;
      const json j = parse_json_line(file, n, line);
      const std::string where = loc(file, n);
      PostEvent p;
      p.post_id = field<std::string>(j, "post_id", where);
      p.author = field<std::string>(j, "author", where);
      p.kind = parse_kind(field<std::string>(j, "kind", where), where);
      if (j.contains("parent_question") && !j.at("parent_question").is_null())
        p.parent_question = field<std::string>(j, "parent_question", where);
      p.timestamp = field<std::int64_t>(j, "timestamp", where);
      p.best_answer = field<bool>(j, "best_answer", where);
      p.answer_rating = field<int>(j, "answer_rating", where);
      p.thumbs_up = field<std::int64_t>(j, "thumbs_up", where);
      p.thumbs_down = field<std::int64_t>(j, "thumbs_down", where);
      c.posts.push_back(std::move(p));
    }
  }
  {
    const std::string file = "flags.jsonl";
    std::size_t n = 0;
    for (const auto& line : read_lines(dir / file)) {
      ++n;
      if (line.empty()) continue;
      const json j = parse_json_line(file, n, line);
      const std::string where = loc(file, n);
      FlagEvent f;
      f.reporter = field<std::string>(j, "reporter", where);
      f.reportee = field<std::string>(j, "reportee", where);
      f.target_post = field<std::string>(j, "target_post", where);
      f.report_time = field<std::int64_t>(j, "report_time", where);
      f.valid = field<bool>(j, "valid", where);
      if (j.contains("deletion_time") && !j.at("deletion_time").is_null())
        f.deletion_time = field<std::int64_t>(j, "deletion_time", where);
      c.flags.push_back(std::move(f));
    }
  }
  {
    const std::string file = "follows.jsonl";
    std::size_t n = 0;
    for (const auto& line : read_lines(dir / file)) {
      ++n;
      if (line.empty()) continue;
      const json j = parse_json_line(file, n, line);
      const std::string where = loc(file, n);
      FollowEdge e;
      e.follower = field<std::string>(j, "follower", where);
      e.followee = field<std::string>(j, "followee", where);
      c.follows.push_back(std::move(e));
    }
  }
  return c;
}

const std::vector<std::string> kUserCols = {"user_id", "level", "suspended", "join_rank"};
const std::vector<std::string> kPostCols = {"post_id", "author", "kind", "parent_question",
                                            "timestamp", "best_answer", "answer_rating",
                                            "thumbs_up", "thumbs_down"};
const std::vector<std::string> kFlagCols = {"reporter", "reportee", "target_post",
                                            "report_time", "valid", "deletion_time"};
const std::vector<std::string> kFollowCols = {"follower", "followee"};

void check_header(const std::vector<std::string>& got,
                  const std::vector<std::string>& want, const std::string& file) {
  if (got != want) {
    std::string expect;
    for (std::size_t i = 0; i < want.size(); ++i)
      expect += (i ? "," : "") + want[i];
    throw CorpusError(loc(file, 1) + ": header must be '" + expect + "'");
  }
}

bool parse_bool01(const std::string& s, const std::string& where) {
  if (s == "0" || s == "false") return false;
  if (s == "1" || s == "true") return true;
  throw CorpusError(where + ": boolean field must be 0/1, got '" + s + "'");
}

EventCorpus load_csv(const std::filesystem::path& dir) {
  EventCorpus c;
  {
    const std::string file = "users.csv";
    const auto lines = read_lines(dir / file);
    if (!lines.empty()) check_header(csv::split_line(lines[0]), kUserCols, file);
    for (std::size_t n = 1; n < lines.size(); ++n) {
      if (lines[n].empty()) continue;
      const std::string where = loc(file, n + 1);
      const auto f = csv::split_line(lines[n]);
      if (f.size() != kUserCols.size()) throw CorpusError(where + ": wrong column count");
      UserRecord u;
      u.user_id = f[0];
      u.level = static_cast<int>(csv::parse_int(f[1], where));
      u.suspended = parse_bool01(f[2], where);
      u.join_rank = csv::parse_int(f[3], where);
      c.users.push_back(std::move(u));
    }
  }
  {
    const std::string file = "posts.csv";
    const auto lines = read_lines(dir / file);
    if (!lines.empty()) check_header(csv::split_line(lines[0]), kPostCols, file);
    for (std::size_t n = 1; n < lines.size(); ++n) {
      if (lines[n].empty()) continue;
      const std::string where = loc(file, n + 1);
      const auto f = csv::split_line(lines[n]);
      if (f.size() != kPostCols.size()) throw CorpusError(where + ": wrong column count");
      PostEvent p;
      p.post_id = f[0];
      p.author = f[1];
      p.kind = parse_kind(f[2], where);
      p.parent_question = f[3];
      p.timestamp = csv::parse_int(f[4], where);
      p.best_answer = parse_bool01(f[5], where);
      p.answer_rating = static_cast<int>(csv::parse_int(f[6], where));
      p.thumbs_up = csv::parse_int(f[7], where);
      p.thumbs_down = csv::parse_int(f[8], where);
      c.posts.push_back(std::move(p));
    }
  }
  {
    const std::string file = "flags.csv";
    const auto lines = read_lines(dir / file);
    if (!lines.empty()) check_header(csv::split_line(lines[0]), kFlagCols, file);
    for (std::size_t n = 1; n < lines.size(); ++n) {
      if (lines[n].empty()) continue;
      const std::string where = loc(file, n + 1);
      const auto f = csv::split_line(lines[n]);
      if (f.size() != kFlagCols.size()) throw CorpusError(where + ": wrong column count");
      FlagEvent fl;
      fl.reporter = f[0];
      fl.reportee = f[1];
      fl.target_post = f[2];
      fl.report_time = csv::parse_int(f[3], where);
      fl.valid = parse_bool01(f[4], where);
      if (!f[5].empty()) fl.deletion_time = csv::parse_int(f[5], where);
      c.flags.push_back(std::move(fl));
    }
  }
  {
    const std::string file = "follows.csv";
    const auto lines = read_lines(dir / file);
    if (!lines.empty()) check_header(csv::split_line(lines[0]), kFollowCols, file);
    for (std::size_t n = 1; n < lines.size(); ++n) {
      if (lines[n].empty()) continue;
      const std::string where = loc(file, n + 1);
      const auto f = csv::split_line(lines[n]);
      if (f.size() != kFollowCols.size()) throw CorpusError(where + ": wrong column count");
      c.follows.push_back({f[0], f[1]});
    }
  }
  return c;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CorpusError("cannot write '" + path.string() + "'");
  out << content;
}

void save_jsonl(const EventCorpus& c, const std::filesystem::path& dir) {
  {
    std::string buf;
    for (const auto& u : c.users) {
      ordered_json j;
      j["user_id"] = u.user_id;
      j["level"] = u.level;
      j["suspended"] = u.suspended;
      j["join_rank"] = u.join_rank;
      buf += j.dump();
      buf += '\n';
    }
    write_file(dir / "users.jsonl", buf);
  }
  {
    std::string buf;
    for (const auto& p : c.posts) {
      ordered_json j;
      j["post_id"] = p.post_id;
      j["author"] = p.author;
      j["kind"] = p.kind == PostKind::question ? "question" : "answer";
      if (!p.parent_question.empty()) j["parent_question"] = p.parent_question;
      j["timestamp"] = p.timestamp;
      j["best_answer"] = p.best_answer;
      j["answer_rating"] = p.answer_rating;
      j["thumbs_up"] = p.thumbs_up;
      j["thumbs_down"] = p.thumbs_down;
      buf += j.dump();
      buf += '\n';
    }
    write_file(dir / "posts.jsonl", buf);
  }
  {
    std::string buf;
    for (const auto& f : c.flags) {
      ordered_json j;
      j["reporter"] = f.reporter;
      j["reportee"] = f.reportee;
      j["target_post"] = f.target_post;
      j["report_time"] = f.report_time;
      j["valid"] = f.valid;
      if (f.deletion_time) j["deletion_time"] = *f.deletion_time;
      buf += j.dump();
      buf += '\n';
    }
    write_file(dir / "flags.jsonl", buf);
  }
  {
    std::string buf;
    for (const auto& e : c.follows) {
      ordered_json j;
      j["follower"] = e.follower;
      j["followee"] = e.followee;
      buf += j.dump();
      buf += '\n';
    }
    write_file(dir / "follows.jsonl", buf);
  }
}

void save_csv(const EventCorpus& c, const std::filesystem::path& dir) {
  {
    std::string buf = "user_id,level,suspended,join_rank\n";
    for (const auto& u : c.users) {
      buf += u.user_id;
      buf += ',' + csv::format_int(u.level);
      buf += ',';
      buf += u.suspended ? '1' : '0';
      buf += ',' + csv::format_int(u.join_rank) + '\n';
    }
    write_file(dir / "users.csv", buf);
  }
  {
    std::string buf =
        "post_id,author,kind,parent_question,timestamp,best_answer,"
        "answer_rating,thumbs_up,thumbs_down\n";
    for (const auto& p : c.posts) {
      buf += p.post_id + ',' + p.author + ',';
      buf += p.kind == PostKind::question ? "question" : "answer";
      buf += ',' + p.parent_question;
      buf += ',' + csv::format_int(p.timestamp);
      buf += ',';
      buf += p.best_answer ? '1' : '0';
      buf += ',' + csv::format_int(p.answer_rating);
      buf += ',' + csv::format_int(p.thumbs_up);
      buf += ',' + csv::format_int(p.thumbs_down) + '\n';
    }
    write_file(dir / "posts.csv", buf);
  }
  {
    std::string buf = "reporter,reportee,target_post,report_time,valid,deletion_time\n";
    for (const auto& f : c.flags) {
      buf += f.reporter + ',' + f.reportee + ',' + f.target_post;
      buf += ',' + csv::format_int(f.report_time);
      buf += ',';
      buf += f.valid ? '1' : '0';
      buf += ',';
      if (f.deletion_time) buf += csv::format_int(*f.deletion_time);
      buf += '\n';
    }
    write_file(dir / "flags.csv", buf);
  }
  {
    std::string buf = "follower,followee\n";
    for (const auto& e : c.follows) buf += e.follower + ',' + e.followee + '\n';
    write_file(dir / "follows.csv", buf);
  }
}

}  // namespace

EventCorpus load_corpus(const std::filesystem::path& dir, CorpusFormat format) {
  return format == CorpusFormat::jsonl ? load_jsonl(dir) : load_csv(dir);
}

void save_corpus(const EventCorpus& corpus, const std::filesystem::path& dir,
                 CorpusFormat format) {
  std::filesystem::create_directories(dir);
  if (format == CorpusFormat::jsonl)
    save_jsonl(corpus, dir);
  else
    save_csv(corpus, dir);
}

std::vector<std::string> corpus_file_names(CorpusFormat format) {
  const char* ext = format == CorpusFormat::jsonl ? ".jsonl" : ".csv";
  return {std::string("users") + ext, std::string("posts") + ext,
          std::string("flags") + ext, std::string("follows") + ext};
}

std::vector<std::string> validate_corpus(const EventCorpus& corpus) {
  std::vector<std::string> issues;
  auto report = [&issues](std::string msg) {
    if (issues.size() < 1000) issues.push_back(std::move(msg));
  };

  std::unordered_set<std::string> user_ids;
  for (const auto& u : corpus.users) {
    if (!user_ids.insert(u.user_id).second)
      report("duplicate user_id '" + u.user_id + "'");
    if (u.level < 1 || u.level > 7)
      report("user '" + u.user_id + "': level " + std::to_string(u.level) +
             " outside 1..7");
    if (u.join_rank < 0) report("user '" + u.user_id + "': negative join_rank");
  }

  std::unordered_map<std::string, const PostEvent*> posts_by_id;
  for (const auto& p : corpus.posts) {
    if (!posts_by_id.emplace(p.post_id, &p).second)
      report("duplicate post_id '" + p.post_id + "'");
    if (!user_ids.count(p.author))
      report("post '" + p.post_id + "': unknown author '" + p.author + "'");
    if (p.timestamp < 0) report("post '" + p.post_id + "': negative timestamp");
    if (p.thumbs_up < 0 || p.thumbs_down < 0)
      report("post '" + p.post_id + "': negative thumb counts");
    if (p.kind == PostKind::question) {
      if (!p.parent_question.empty())
        report("question '" + p.post_id + "': parent_question must be empty");
      if (p.best_answer)
        report("question '" + p.post_id + "': best_answer flag is answer-only");
      if (p.answer_rating != 0)
        report("question '" + p.post_id + "': answer_rating is answer-only");
    } else {
      if (p.parent_question.empty())
        report("answer '" + p.post_id + "': missing parent_question");
      if (p.answer_rating < 0 || p.answer_rating > 5)
        report("answer '" + p.post_id + "': answer_rating outside 0..5");
      if (!p.best_answer && p.answer_rating != 0)
        report("answer '" + p.post_id + "': rated but not marked best answer");
    }
  }

  std::unordered_map<std::string, int> best_per_question;
  for (const auto& p : corpus.posts) {
    if (p.kind != PostKind::answer || p.parent_question.empty()) continue;
    auto it = posts_by_id.find(p.parent_question);
    if (it == posts_by_id.end()) {
      report("answer '" + p.post_id + "': parent question '" + p.parent_question +
             "' does not exist");
      continue;
    }
    const PostEvent& q = *it->second;
    if (q.kind != PostKind::question)
      report("answer '" + p.post_id + "': parent '" + p.parent_question +
             "' is not a question");
    else if (q.author == p.author)
      report("answer '" + p.post_id + "': self-answer to own question");
    else if (q.timestamp > p.timestamp)
      report("answer '" + p.post_id + "': posted before its question");
    if (p.best_answer && ++best_per_question[p.parent_question] == 2)
      report("question '" + p.parent_question + "': more than one best answer");
  }

  for (std::size_t i = 0; i < corpus.flags.size(); ++i) {
    const auto& f = corpus.flags[i];
    const std::string where = "flag #" + std::to_string(i + 1);
    if (!user_ids.count(f.reporter))
      report(where + ": unknown reporter '" + f.reporter + "'");
    if (!user_ids.count(f.reportee))
      report(where + ": unknown reportee '" + f.reportee + "'");
    if (f.report_time < 0) report(where + ": negative report_time");
    auto it = posts_by_id.find(f.target_post);
    if (it == posts_by_id.end()) {
      report(where + ": target post '" + f.target_post + "' does not exist");
    } else if (it->second->author != f.reportee) {
      report(where + ": reportee '" + f.reportee + "' is not the author of '" +
             f.target_post + "'");
    }
    if (f.valid && !f.deletion_time)
      report(where + ": valid flag missing deletion_time");
    if (!f.valid && f.deletion_time)
      report(where + ": invalid flag carries deletion_time");
    if (f.deletion_time && *f.deletion_time < f.report_time)
      report(where + ": deletion_time precedes report_time");
  }

  std::set<std::pair<std::string, std::string>> seen_follows;
  for (const auto& e : corpus.follows) {
    if (!user_ids.count(e.follower))
      report("follow edge: unknown follower '" + e.follower + "'");
    if (!user_ids.count(e.followee))
      report("follow edge: unknown followee '" + e.followee + "'");
    if (e.follower == e.followee)
      report("follow edge: self-follow by '" + e.follower + "'");
    if (!seen_follows.emplace(e.follower, e.followee).second)
      report("follow edge: duplicate pair " + e.follower + "->" + e.followee);
  }
  return issues;
}

LedgerMap aggregate_ledgers(const EventCorpus& corpus) {
  LedgerMap ledgers;
  for (const auto& u : corpus.users) ledgers[u.user_id];

  std::unordered_map<std::string, const PostEvent*> posts_by_id;
  posts_by_id.reserve(corpus.posts.size());
  for (const auto& p : corpus.posts) posts_by_id.emplace(p.post_id, &p);

  std::set<std::string> questions_with_best;
  for (const auto& p : corpus.posts) {
    auto it = ledgers.find(p.author);
    if (it == ledgers.end()) continue;  // invalid corpora are the validator's job
    UserLedger& l = it->second;
    if (p.kind == PostKind::question) {
      ++l.n_questions;
    } else {
      ++l.n_answers;
      if (p.best_answer) {
        ++l.n_best_answers;
        l.award_ratings_sum += p.answer_rating;
        questions_with_best.insert(p.parent_question);
      }
    }
    l.thumbs_up_sum += p.thumbs_up;
    l.thumbs_down_sum += p.thumbs_down;
  }

  std::set<std::string> flagged_posts;
  for (const auto& f : corpus.flags) {
    auto pit = posts_by_id.find(f.target_post);
    if (pit == posts_by_id.end()) continue;
    const PostEvent& post = *pit->second;
    const bool question_side = post.kind == PostKind::question;

    if (auto it = ledgers.find(post.author); it != ledgers.end()) {
      UserLedger& l = it->second;
      if (question_side) {
        ++l.q_flags_received;
        if (f.valid) ++l.q_flags_received_valid;
      } else {
        ++l.a_flags_received;
        if (f.valid) ++l.a_flags_received_valid;
      }
      if (flagged_posts.insert(f.target_post).second) {
        if (question_side)
          ++l.n_flagged_questions;
        else
          ++l.n_flagged_answers;
      }
    }
    if (auto it = ledgers.find(f.reporter); it != ledgers.end()) {
      UserLedger& l = it->second;
      if (question_side) {
        ++l.q_flags_reported;
        if (f.valid) ++l.q_flags_reported_valid;
      } else {
        ++l.a_flags_reported;
        if (f.valid) ++l.a_flags_reported_valid;
      }
    }
  }

  for (const auto& q_id : questions_with_best) {
    auto pit = posts_by_id.find(q_id);
    if (pit == posts_by_id.end()) continue;
    if (auto it = ledgers.find(pit->second->author); it != ledgers.end())
      it->second.points += 3;  // accumulated fully below
  }
  for (auto& [id, l] : ledgers)
    l.points += -5 * l.n_questions + 2 * l.n_answers + 10 * l.n_best_answers;
  return ledgers;
}

DirectedGraph build_ff_network(const EventCorpus& corpus) {
  std::vector<std::string> ids;
  ids.reserve(corpus.users.size());
  for (const auto& u : corpus.users) ids.push_back(u.user_id);
  std::vector<std::pair<std::string, std::string>> edges;
  edges.reserve(corpus.follows.size());
  for (const auto& e : corpus.follows) edges.emplace_back(e.follower, e.followee);
  return DirectedGraph::build(std::move(ids), edges);
}

DirectedGraph build_activity_network(const EventCorpus& corpus) {
  std::unordered_map<std::string, const PostEvent*> posts_by_id;
  posts_by_id.reserve(corpus.posts.size());
  for (const auto& p : corpus.posts) posts_by_id.emplace(p.post_id, &p);

  std::vector<std::string> ids;
  ids.reserve(corpus.users.size());
  for (const auto& u : corpus.users) ids.push_back(u.user_id);

  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& p : corpus.posts) {
    if (p.kind != PostKind::answer) continue;
    auto it = posts_by_id.find(p.parent_question);
    if (it == posts_by_id.end()) continue;
    const std::string& asker = it->second->author;
    if (asker == p.author) continue;  // self-answers never form AN edges
    edges.emplace_back(p.author, asker);
  }
  return DirectedGraph::build(std::move(ids), edges);
}

}  // namespace cqabuse::corpus
