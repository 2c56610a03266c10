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

#include "cqabuse/synth.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <deque>
#include <set>

#include <json.hpp>

#include "cqabuse/errors.hpp"
#include "cqabuse/rng.hpp"

namespace cqabuse::corpus {

namespace {

using nlohmann::ordered_json;

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ConfigError(std::string("config field '") + field + "' " + what);
}

void check_unit(double v, const char* field) {
  require(v >= 0.0 && v <= 1.0, field, "must be within [0, 1]");
}

}  // namespace

void validate_config(const SyntheticConfig& c) {
  require(c.n_users >= 2, "n_users", "must be at least 2");
  require(c.follow_degree_exponent > 1.0, "follow_degree_exponent", "must exceed 1");
  check_unit(c.homophily_strength, "homophily_strength");
  check_unit(c.deviant_fraction, "deviant_fraction");
  check_unit(c.suspended_fraction, "suspended_fraction");
  check_unit(c.stealth_fraction, "stealth_fraction");
  require(c.question_rate >= 0.0, "question_rate", "must be non-negative");
  require(c.answer_rate >= 0.0, "answer_rate", "must be non-negative");
  require(c.activity_tail_exponent > 0.0, "activity_tail_exponent", "must be positive");
  require(c.activity_cap >= 1.0, "activity_cap", "must be at least 1");
  check_unit(c.answer_hop_base, "answer_hop_base");
  require(c.answer_hop_decay > 0.0 && c.answer_hop_decay <= 1.0, "answer_hop_decay",
          "must be within (0, 1]");
  check_unit(c.flag_validity_rate, "flag_validity_rate");
  check_unit(c.misflag_rate, "misflag_rate");
  check_unit(c.flag_local_prob, "flag_local_prob");
  check_unit(c.best_answer_prob, "best_answer_prob");
  require(c.report_delay_median_s > 0, "report_delay_median_s", "must be positive");
  check_unit(c.slow_curation_fraction, "slow_curation_fraction");
}

SyntheticConfig config_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config is not valid JSON");
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  SyntheticConfig c;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "n_users") c.n_users = value.get<std::int64_t>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "follow_degree_exponent") c.follow_degree_exponent = value.get<double>();
      else if (key == "homophily_strength") c.homophily_strength = value.get<double>();
      else if (key == "deviant_fraction") c.deviant_fraction = value.get<double>();
      else if (key == "suspended_fraction") c.suspended_fraction = value.get<double>();
      else if (key == "stealth_fraction") c.stealth_fraction = value.get<double>();
      else if (key == "question_rate") c.question_rate = value.get<double>();
      else if (key == "answer_rate") c.answer_rate = value.get<double>();
      else if (key == "activity_tail_exponent") c.activity_tail_exponent = value.get<double>();
      else if (key == "activity_cap") c.activity_cap = value.get<double>();
      else if (key == "answer_hop_base") c.answer_hop_base = value.get<double>();
      else if (key == "answer_hop_decay") c.answer_hop_decay = value.get<double>();
      else if (key == "flag_validity_rate") c.flag_validity_rate = value.get<double>();
      else if (key == "misflag_rate") c.misflag_rate = value.get<double>();
      else if (key == "flag_local_prob") c.flag_local_prob = value.get<double>();
      else if (key == "best_answer_prob") c.best_answer_prob = value.get<double>();
      else if (key == "report_delay_median_s") c.report_delay_median_s = value.get<std::int64_t>();
      else if (key == "slow_curation_fraction") c.slow_curation_fraction = value.get<double>();
      else throw ConfigError("unknown config field '" + key + "'");
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("config field '" + key + "' has the wrong type");
    }
  }
  validate_config(c);
  return c;
}

std::string config_to_json_text(const SyntheticConfig& c) {
  ordered_json j;
  j["n_users"] = c.n_users;
  j["seed"] = c.seed;
  j["follow_degree_exponent"] = c.follow_degree_exponent;
  j["homophily_strength"] = c.homophily_strength;
  j["deviant_fraction"] = c.deviant_fraction;
  j["suspended_fraction"] = c.suspended_fraction;
  j["stealth_fraction"] = c.stealth_fraction;
  j["question_rate"] = c.question_rate;
  j["answer_rate"] = c.answer_rate;
  j["activity_tail_exponent"] = c.activity_tail_exponent;
  j["activity_cap"] = c.activity_cap;
  j["answer_hop_base"] = c.answer_hop_base;
  j["answer_hop_decay"] = c.answer_hop_decay;
  j["flag_validity_rate"] = c.flag_validity_rate;
  j["misflag_rate"] = c.misflag_rate;
  j["flag_local_prob"] = c.flag_local_prob;
  j["best_answer_prob"] = c.best_answer_prob;
  j["report_delay_median_s"] = c.report_delay_median_s;
  j["slow_curation_fraction"] = c.slow_curation_fraction;
  return j.dump(2);
}

namespace {

constexpr int kPlantHops = 4;          // distance-decay horizon
constexpr double kStealthFollowScale = 0.35;
constexpr double kStealthVisibility = 0.25;  // chance a stealth user is followed
constexpr double kStealthQuestionScale = 0.5;
constexpr double kStealthAnswerScale = 0.1;
constexpr double kFlagCatchProb = 0.92;
constexpr double kExtraFlagRate = 0.35;      // Poisson extra flags on a caught post
constexpr double kInteractionReporterProb = 0.35;
constexpr std::int64_t kTimeSpan = 300LL * 86400LL;
constexpr std::int64_t kReportDelayCap = 21600;   // 6 h
constexpr std::int64_t kSameDayLimit = 86400;
constexpr std::int64_t kThreeDayLimit = 259200;
// Reporter hop preference within the local pool (hops 1..4, renormalized
// over non-empty hop sets).
constexpr double kHopWeights[kPlantHops] = {0.55, 0.27, 0.13, 0.05};
constexpr std::size_t kPoolSample = 40;  // follower-pool sample cap per hop

std::string padded_id(char prefix, std::size_t index, int width) {
  std::string digits = std::to_string(index);
  std::string out(1, prefix);
  out.append(static_cast<std::size_t>(width) - std::min<std::size_t>(digits.size(), width), '0');
  out += digits;
  return out;
}

int id_width(std::size_t count) {
  int w = 1;
  std::size_t v = count > 0 ? count - 1 : 0;
  while (v >= 10) {
    v /= 10;
    ++w;
  }
  return std::max(w, 4);
}

struct QuestionDraft {
  std::uint32_t author;
  std::int64_t ts;
};

struct AnswerDraft {
  std::uint32_t author;
  std::uint32_t question;  // index into questions
  std::int64_t ts;
  bool best = false;
  int rating = 0;
};

}  // namespace

EventCorpus generate_synthetic(const SyntheticConfig& cfg) {
  validate_config(cfg);
  const std::size_t n = static_cast<std::size_t>(cfg.n_users);
  Rng master(cfg.seed);

  // --- cohorts -------------------------------------------------------------
  std::vector<std::uint8_t> is_deviant(n, 0), is_suspended(n, 0), is_stealth(n, 0);
  std::vector<double> abuse_rate(n, 0.0);
  {
    Rng rng = master.fork(1);
    std::vector<std::uint32_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
    rng.shuffle(order);
    const std::size_t n_dev = static_cast<std::size_t>(
        std::llround(cfg.deviant_fraction * static_cast<double>(n)));
    const std::size_t n_susp = static_cast<std::size_t>(
        std::llround(cfg.suspended_fraction * static_cast<double>(n)));
    const std::size_t n_stealth = static_cast<std::size_t>(
        std::llround(cfg.stealth_fraction * static_cast<double>(n_susp)));
    for (std::size_t i = 0; i < n_dev && i < n; ++i) is_deviant[order[i]] = 1;
    // Suspensions prefer the deviant slice; overflow (if configured larger)
    // spills into the non-deviant tail of the same shuffle.
    for (std::size_t i = 0; i < n_susp && i < n; ++i) is_suspended[order[i]] = 1;
    for (std::size_t i = 0; i < n_stealth && i < n; ++i) is_stealth[order[i]] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_deviant[i]) continue;
      abuse_rate[i] = is_suspended[i] ? 0.5 + 0.4 * rng.uniform01()
                                      : 0.12 + 0.33 * rng.uniform01();
    }
  }

  // --- per-user activity multipliers ---------------------------------------
  std::vector<double> mult(n, 1.0);
  {
    Rng rng = master.fork(2);
    for (std::size_t i = 0; i < n; ++i)
      mult[i] = std::min(rng.pareto(cfg.activity_tail_exponent), cfg.activity_cap);
  }

  // --- follow edges ----------------------------------------------------------
  std::vector<std::pair<std::uint32_t, std::uint32_t>> follows;
  std::vector<std::vector<std::uint32_t>> followers_of(n);  // reverse adjacency
  {
    Rng rng = master.fork(3);
    std::vector<std::uint32_t> deviants, others;
    for (std::size_t i = 0; i < n; ++i)
      (is_deviant[i] ? deviants : others).push_back(static_cast<std::uint32_t>(i));

    std::set<std::uint64_t> seen;
    for (std::size_t u = 0; u < n; ++u) {
      double want = std::floor(rng.pareto(cfg.follow_degree_exponent - 1.0));
      if (is_stealth[u]) want = std::floor(kStealthFollowScale * want);
      std::size_t d = std::min<std::size_t>(static_cast<std::size_t>(want), n - 1);
      std::size_t placed = 0, attempts = 0;
      const std::size_t max_attempts = 12 * d + 24;
      while (placed < d && attempts < max_attempts) {
        ++attempts;
        // With probability homophily_strength the target comes from the same
        // cohort (deviant vs. not); otherwise it is uniform over all users.
        std::uint32_t t;
        const auto& pool = is_deviant[u] ? deviants : others;
        if (rng.bernoulli(cfg.homophily_strength) && !pool.empty())
          t = pool[rng.uniform_int(pool.size())];
        else
          t = static_cast<std::uint32_t>(rng.uniform_int(n));
        if (t == u) continue;
        if (is_stealth[t] && !rng.bernoulli(kStealthVisibility)) continue;
        const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | t;
        if (!seen.insert(key).second) continue;
        follows.emplace_back(static_cast<std::uint32_t>(u), t);
        followers_of[t].push_back(static_cast<std::uint32_t>(u));
        ++placed;
      }
    }
  }

  // --- questions -------------------------------------------------------------
  std::vector<QuestionDraft> questions;
  std::vector<std::vector<std::uint32_t>> questions_of(n);
  {
    Rng rng = master.fork(4);
    for (std::size_t u = 0; u < n; ++u) {
      double rate = cfg.question_rate * mult[u];
      if (is_stealth[u]) rate *= kStealthQuestionScale;
      std::uint64_t nq = rng.poisson(rate);
      if (is_suspended[u] && !is_stealth[u] && nq == 0) nq = 1;  // keep flaggable
      for (std::uint64_t k = 0; k < nq; ++k) {
        questions_of[u].push_back(static_cast<std::uint32_t>(questions.size()));
        questions.push_back({static_cast<std::uint32_t>(u),
                             static_cast<std::int64_t>(rng.uniform_int(kTimeSpan))});
      }
    }
  }

  // --- answers: distance-decayed planted + uniform background ----------------
  std::vector<AnswerDraft> answers;
  std::vector<std::vector<std::uint32_t>> answers_of_question(questions.size());
  std::vector<std::vector<std::uint32_t>> interacted(n);  // answer partners
  // Sampled follower pools per hop, reused as local reporter pools.
  std::vector<std::array<std::vector<std::uint32_t>, kPlantHops>> hop_pool(n);
  {
    Rng rng = master.fork(5);
    std::vector<std::int32_t> dist(n, -1);
    std::vector<std::uint32_t> touched;
    std::deque<std::uint32_t> queue;
    std::array<std::vector<std::uint32_t>, kPlantHops> frontier;

    auto add_answer = [&](std::uint32_t author, std::uint32_t q_idx, Rng& r) {
      const QuestionDraft& q = questions[q_idx];
      AnswerDraft a;
      a.author = author;
      a.question = q_idx;
      a.ts = q.ts + static_cast<std::int64_t>(r.lognormal(std::log(7200.0), 1.0));
      answers_of_question[q_idx].push_back(static_cast<std::uint32_t>(answers.size()));
      interacted[q.author].push_back(author);
      interacted[author].push_back(q.author);
      answers.push_back(a);
    };

    for (std::size_t u = 0; u < n; ++u) {
      for (auto& f : frontier) f.clear();
      // Reverse BFS over follow edges: hop h holds u's h-hop followers.
      dist[u] = 0;
      touched.push_back(static_cast<std::uint32_t>(u));
      queue.push_back(static_cast<std::uint32_t>(u));
      while (!queue.empty()) {
        const std::uint32_t v = queue.front();
        queue.pop_front();
        if (dist[v] >= kPlantHops) continue;
        for (std::uint32_t w : followers_of[v])
          if (dist[w] < 0) {
            dist[w] = dist[v] + 1;
            frontier[dist[w] - 1].push_back(w);
            touched.push_back(w);
            queue.push_back(w);
          }
      }
      const bool has_questions = !questions_of[u].empty();
      for (int h = 0; h < kPlantHops; ++h) {
        const double p_answer =
            cfg.answer_hop_base * std::pow(cfg.answer_hop_decay, h);
        for (std::uint32_t s : frontier[h]) {
          if (has_questions && !(is_stealth[s] && !rng.bernoulli(kStealthAnswerScale)) &&
              rng.bernoulli(p_answer)) {
            const auto& qs = questions_of[u];
            add_answer(s, qs[rng.uniform_int(qs.size())], rng);
          }
        }
        // Keep a bounded hop sample for later reporter draws.
        auto& pool = hop_pool[u][h];
        if (frontier[h].size() <= kPoolSample) {
          pool = frontier[h];
        } else {
          for (std::size_t pick : rng.sample_indices(frontier[h].size(), kPoolSample))
            pool.push_back(frontier[h][pick]);
          std::sort(pool.begin(), pool.end());
        }
      }
      for (std::uint32_t v : touched) dist[v] = -1;
      touched.clear();
    }

    // Background answers to uniformly random questions.
    if (!questions.empty()) {
      for (std::size_t s = 0; s < n; ++s) {
        double rate = cfg.answer_rate * mult[s];
        if (is_stealth[s]) rate *= kStealthAnswerScale;
        const std::uint64_t cnt = rng.poisson(rate);
        for (std::uint64_t k = 0; k < cnt; ++k) {
          for (int attempt = 0; attempt < 20; ++attempt) {
            const std::uint32_t q_idx =
                static_cast<std::uint32_t>(rng.uniform_int(questions.size()));
            if (questions[q_idx].author == s) continue;
            add_answer(static_cast<std::uint32_t>(s), q_idx, rng);
            break;
          }
        }
      }
    }
  }

  // --- best answers -----------------------------------------------------------
  {
    Rng rng = master.fork(6);
    for (std::size_t q = 0; q < questions.size(); ++q) {
      const auto& cands = answers_of_question[q];
      if (cands.empty() || !rng.bernoulli(cfg.best_answer_prob)) continue;
      AnswerDraft& best = answers[cands[rng.uniform_int(cands.size())]];
      best.best = true;
      best.rating = static_cast<int>(rng.uniform_int(1, 5));
    }
  }

  // --- assemble post table ------------------------------------------------------
  EventCorpus out;
  const int uw = id_width(n);
  const int qw = id_width(questions.size());
  const int aw = id_width(answers.size());
  auto user_id = [&](std::uint32_t u) { return padded_id('u', u, uw); };

  out.posts.reserve(questions.size() + answers.size());
  {
    Rng rng = master.fork(7);  // thumbs
    for (std::size_t q = 0; q < questions.size(); ++q) {
      PostEvent p;
      p.post_id = padded_id('q', q, qw);
      p.author = user_id(questions[q].author);
      p.kind = PostKind::question;
      p.timestamp = questions[q].ts;
      p.thumbs_up = static_cast<std::int64_t>(rng.poisson(0.2));
      p.thumbs_down = static_cast<std::int64_t>(rng.poisson(0.1));
      out.posts.push_back(std::move(p));
    }
    for (std::size_t a = 0; a < answers.size(); ++a) {
      const AnswerDraft& d = answers[a];
      PostEvent p;
      p.post_id = padded_id('a', a, aw);
      p.author = user_id(d.author);
      p.kind = PostKind::answer;
      p.parent_question = padded_id('q', d.question, qw);
      p.timestamp = d.ts;
      p.best_answer = d.best;
      p.answer_rating = d.rating;
      p.thumbs_up = static_cast<std::int64_t>(rng.poisson(0.4 + 0.4 * d.rating));
      p.thumbs_down = static_cast<std::int64_t>(rng.poisson(0.25));
      out.posts.push_back(std::move(p));
    }
  }

  // --- flags ---------------------------------------------------------------------
  std::vector<std::uint32_t> flags_received(n, 0);
  {
    Rng rng = master.fork(8);

    auto pick_reporter = [&](std::uint32_t v) -> std::uint32_t {
      if (rng.bernoulli(cfg.flag_local_prob)) {
        if (!interacted[v].empty() && rng.bernoulli(kInteractionReporterProb))
          return interacted[v][rng.uniform_int(interacted[v].size())];
        double avail = 0.0;
        for (int h = 0; h < kPlantHops; ++h)
          if (!hop_pool[v][h].empty()) avail += kHopWeights[h];
        if (avail > 0.0) {
          double roll = rng.uniform01() * avail;
          for (int h = 0; h < kPlantHops; ++h) {
            if (hop_pool[v][h].empty()) continue;
            roll -= kHopWeights[h];
            if (roll <= 0.0)
              return hop_pool[v][h][rng.uniform_int(hop_pool[v][h].size())];
          }
        }
      }
      for (;;) {
        const std::uint32_t r = static_cast<std::uint32_t>(rng.uniform_int(n));
        if (r != v) return r;
      }
    };

    auto emit_flag = [&](const PostEvent& post, std::uint32_t author) {
      FlagEvent f;
      f.reporter = user_id(pick_reporter(author));
      f.reportee = post.author;
      f.target_post = post.post_id;
      const std::int64_t report_delay = std::min<std::int64_t>(
          static_cast<std::int64_t>(
              rng.lognormal(std::log(static_cast<double>(cfg.report_delay_median_s)), 1.2)),
          kReportDelayCap);
      f.report_time = post.timestamp + report_delay;
      f.valid = rng.bernoulli(cfg.flag_validity_rate);
      if (f.valid) {
        std::int64_t total;
        if (rng.bernoulli(cfg.slow_curation_fraction)) {
          total = static_cast<std::int64_t>(
              rng.uniform_int(static_cast<std::uint64_t>(kSameDayLimit + 3600),
                              static_cast<std::uint64_t>(kThreeDayLimit - 1)));
        } else {
          total = report_delay +
                  static_cast<std::int64_t>(rng.lognormal(std::log(3600.0), 0.8));
          if (total >= kSameDayLimit) total = kSameDayLimit - 1;
        }
        f.deletion_time = post.timestamp + total;
      }
      ++flags_received[author];
      out.flags.push_back(std::move(f));
    };

    for (const PostEvent& post : out.posts) {
      const std::uint32_t author = static_cast<std::uint32_t>(
          std::stoul(post.author.substr(1)));
      if (is_stealth[author]) continue;  // stealth users are never reported
      bool caught = false;
      if (is_deviant[author] && rng.bernoulli(abuse_rate[author]) &&
          rng.bernoulli(kFlagCatchProb))
        caught = true;
      if (caught) {
        const std::uint64_t extra = rng.poisson(kExtraFlagRate);
        for (std::uint64_t k = 0; k < 1 + extra; ++k) emit_flag(post, author);
      } else if (rng.bernoulli(cfg.misflag_rate)) {
        emit_flag(post, author);
      }
    }

    // Guarantee every non-stealth suspended user was flagged at least once, so
    // "suspended with zero flags" is exactly the stealth cohort.
    std::vector<std::vector<std::uint32_t>> posts_of(n);
    for (std::uint32_t p = 0; p < out.posts.size(); ++p) {
      const std::uint32_t author =
          static_cast<std::uint32_t>(std::stoul(out.posts[p].author.substr(1)));
      posts_of[author].push_back(p);
    }
    for (std::size_t u = 0; u < n; ++u) {
      if (!is_suspended[u] || is_stealth[u] || flags_received[u] > 0) continue;
      if (posts_of[u].empty()) continue;
      const PostEvent& post = out.posts[posts_of[u][rng.uniform_int(posts_of[u].size())]];
      FlagEvent f;
      f.reporter = user_id(pick_reporter(static_cast<std::uint32_t>(u)));
      f.reportee = post.author;
      f.target_post = post.post_id;
      f.report_time = post.timestamp + 300;
      f.valid = true;
      f.deletion_time = f.report_time + 3600;
      ++flags_received[u];
      out.flags.push_back(std::move(f));
    }
  }

  // --- users: points -> levels ------------------------------------------------
  {
    std::vector<std::int64_t> points(n, 0);
    std::vector<std::uint8_t> q_has_best(questions.size(), 0);
    for (const AnswerDraft& a : answers) {
      points[a.author] += 2;
      if (a.best) {
        points[a.author] += 10;
        q_has_best[a.question] = 1;
      }
    }
    for (std::size_t q = 0; q < questions.size(); ++q) {
      points[questions[q].author] -= 5;
      if (q_has_best[q]) points[questions[q].author] += 3;
    }
    auto level_of = [](std::int64_t p) {
      if (p < 0) return 1;
      if (p < 10) return 2;
      if (p < 30) return 3;
      if (p < 80) return 4;
      if (p < 200) return 5;
      if (p < 500) return 6;
      return 7;
    };
    out.users.reserve(n);
    for (std::size_t u = 0; u < n; ++u) {
      UserRecord rec;
      rec.user_id = user_id(static_cast<std::uint32_t>(u));
      rec.level = level_of(points[u]);
      rec.suspended = is_suspended[u] != 0;
      rec.join_rank = static_cast<std::int64_t>(u);
      out.users.push_back(std::move(rec));
    }
  }

  out.follows.reserve(follows.size());
  for (const auto& [f, t] : follows)
    out.follows.push_back({user_id(f), user_id(t)});

  return out;
}

}  // namespace cqabuse::corpus
