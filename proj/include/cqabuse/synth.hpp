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
#include <string>

#include "cqabuse/corpus.hpp"

namespace cqabuse::corpus {

//! Knobs for the ground-truth community generator.  Defaults produce a
//! 10k-user corpus with planted abuse structure: deviant users cluster in the
//! follow graph (strength = homophily_strength), answers and flags arrive
//! preferentially from close followers with per-hop decaying probability,
//! suspended accounts concentrate among the most abusive users, and a
//! stealth_fraction of suspended users receive no flags at all while showing
//! a distinct low-degree low-activity footprint.
struct SyntheticConfig {
  std::int64_t n_users = 10000;
  std::uint64_t seed = 42;

  // Social graph shape.
  double follow_degree_exponent = 2.6;  // out-degree power-law density exponent
  double homophily_strength = 0.8;      // probability a follow stays within type

  // Cohort sizes.
  double deviant_fraction = 0.15;
  double suspended_fraction = 0.09;
  double stealth_fraction = 0.4;  // share of suspended receiving zero flags

  // Activity volume.
  double question_rate = 1.2;          // Poisson rate scale for questions
  double answer_rate = 1.5;            // Poisson rate scale for background answers
  double activity_tail_exponent = 1.5; // per-user activity multiplier tail
  double activity_cap = 80.0;

  // Distance decay for planted answers: P(h-hop follower answers) =
  // answer_hop_base * answer_hop_decay^(h-1), h = 1..4.
  double answer_hop_base = 0.2;
  double answer_hop_decay = 0.25;

  // Flagging behavior.
  double flag_validity_rate = 0.9;  // P(flag upheld by inspection)
  double misflag_rate = 0.04;       // P(a non-abusive post draws one flag)
  double flag_local_prob = 0.8;     // P(reporter comes from the local pool)
  double best_answer_prob = 0.5;

  // Curation timing.
  std::int64_t report_delay_median_s = 600;
  double slow_curation_fraction = 0.03;  // deletions that take 1..3 days
};

//! Throws ConfigError naming the offending field when a value is out of range.
void validate_config(const SyntheticConfig& config);

//! Parse a config JSON object.  Missing fields keep defaults; unknown fields
//! raise ConfigError.
SyntheticConfig config_from_json_text(const std::string& text);

//! Serialize every field (stable key order), e.g. for run manifests.
std::string config_to_json_text(const SyntheticConfig& config);

//! Deterministic corpus synthesis: a fixed config (including seed) yields a
//! byte-identical corpus.
EventCorpus generate_synthetic(const SyntheticConfig& config);

}  // namespace cqabuse::corpus
