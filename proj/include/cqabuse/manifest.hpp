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
#include <string>
#include <string_view>
#include <vector>

namespace cqabuse {

inline constexpr std::string_view kToolVersion = "0.1.0";

//! 64-bit FNV-1a digest, lowercase hex.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

//! Digest of a file's raw bytes; throws CorpusError when unreadable.
std::string hash_file(const std::filesystem::path& path);

struct StageTiming {
  std::string stage;
  double wall_seconds = 0.0;
};

//! Provenance record written next to every command's outputs.  Two runs are
//! equivalent iff their commands, config snapshots, seeds, input hashes and
//! output hashes match; wall times are diagnostics and excluded from
//! equivalence.
struct RunManifest {
  std::string tool_version{kToolVersion};
  std::string command;
  std::string config_json;  // effective options, JSON text
  std::uint64_t seed = 0;
  int threads = 0;
  std::map<std::string, std::string> input_hashes;
  std::map<std::string, std::string> output_hashes;
  std::vector<StageTiming> stage_timings;
};

std::string manifest_to_json_text(const RunManifest& m);
RunManifest manifest_from_json_text(const std::string& text);

void save_manifest(const RunManifest& m, const std::filesystem::path& path);
RunManifest load_manifest(const std::filesystem::path& path);

}  // namespace cqabuse
