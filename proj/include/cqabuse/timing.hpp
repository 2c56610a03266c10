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

#include <cstddef>

#include "cqabuse/corpus.hpp"
#include "cqabuse/stats.hpp"

namespace cqabuse::timing {

//! Seconds between a post's creation and its moderation deletion, one sample
//! per valid flag on a post of `kind`.  Throws AnalysisError when no valid
//! flag of that kind carries a deletion time.
stats::EmpiricalDistribution deletion_delay_cdf(const corpus::EventCorpus& c,
                                                corpus::PostKind kind);

//! Seconds between a post's creation and each valid flag's report time (how
//! quickly the community reacts).  Throws AnalysisError when no valid flag
//! targets a post of `kind`.
stats::EmpiricalDistribution report_time_to_flag_cdf(
    const corpus::EventCorpus& c, corpus::PostKind kind);

struct DelaySummary {
  std::size_t n = 0;
  double median_s = 0.0;
  double within_1_day = 0.0;   // fraction of delays < 86,400 s (elapsed time)
  double within_3_days = 0.0;  // fraction of delays < 259,200 s
};

DelaySummary summarize_delays(const stats::EmpiricalDistribution& delays);

}  // namespace cqabuse::timing
