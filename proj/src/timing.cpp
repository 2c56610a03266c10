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

#include "cqabuse/timing.hpp"

#include <string>
#include <unordered_map>
#include <vector>

#include "cqabuse/errors.hpp"

namespace cqabuse::timing {

namespace {

constexpr double kDaySeconds = 86400.0;

//! Collect per-valid-flag delays of posts of `kind`; `to_deletion` switches
//! between deletion_time and report_time as the endpoint.
std::vector<double> collect_delays(const corpus::EventCorpus& c,
                                   corpus::PostKind kind, bool to_deletion) {
  std::unordered_map<std::string_view, const corpus::PostEvent*> posts;
  posts.reserve(c.posts.size());
  for (const auto& p : c.posts) posts.emplace(p.post_id, &p);

  std::vector<double> delays;
  for (const auto& f : c.flags) {
    if (!f.valid) continue;
    const auto it = posts.find(f.target_post);
    if (it == posts.end())
      throw AnalysisError("flag targets unknown post '" + f.target_post + "'");
    const corpus::PostEvent& post = *it->second;
    if (post.kind != kind) continue;
    if (to_deletion) {
      if (!f.deletion_time) continue;
      delays.push_back(static_cast<double>(*f.deletion_time - post.timestamp));
    } else {
      delays.push_back(static_cast<double>(f.report_time - post.timestamp));
    }
  }
  if (delays.empty())
    throw AnalysisError(std::string("no valid flags on ") +
                        (kind == corpus::PostKind::question ? "questions"
                                                            : "answers") +
                        " to build a delay distribution");
  return delays;
}

}  // namespace

stats::EmpiricalDistribution deletion_delay_cdf(const corpus::EventCorpus& c,
                                                corpus::PostKind kind) {
  return stats::EmpiricalDistribution(collect_delays(c, kind, true),
                                      stats::DistKind::cdf);
}

stats::EmpiricalDistribution report_time_to_flag_cdf(
    const corpus::EventCorpus& c, corpus::PostKind kind) {
  return stats::EmpiricalDistribution(collect_delays(c, kind, false),
                                      stats::DistKind::cdf);
}

DelaySummary summarize_delays(const stats::EmpiricalDistribution& delays) {
  DelaySummary s;
  s.n = delays.values().size();
  s.median_s = delays.quantile(0.5);
  std::size_t one = 0, three = 0;
  for (double d : delays.values()) {
    if (d < kDaySeconds) ++one;
    if (d < 3.0 * kDaySeconds) ++three;
  }
  s.within_1_day = static_cast<double>(one) / static_cast<double>(s.n);
  s.within_3_days = static_cast<double>(three) / static_cast<double>(s.n);
  return s;
}

}  // namespace cqabuse::timing
