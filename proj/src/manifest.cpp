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

#include "cqabuse/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cqabuse/errors.hpp"

namespace cqabuse {

namespace {
using nlohmann::ordered_json;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot read file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return fnv1a64_hex(buf.str());
}

std::string manifest_to_json_text(const RunManifest& m) {
  ordered_json j;
  j["tool_version"] = m.tool_version;
  j["command"] = m.command;
  j["seed"] = m.seed;
  j["threads"] = m.threads;
  if (!m.config_json.empty()) {
    nlohmann::json config = nlohmann::json::parse(m.config_json, nullptr, false);
    j["config"] = config.is_discarded() ? nlohmann::json(m.config_json)
                                        : config;
  } else {
    j["config"] = nlohmann::json::object();
  }
  j["input_hashes"] = m.input_hashes;
  j["output_hashes"] = m.output_hashes;
  ordered_json timings = ordered_json::array();
  for (const StageTiming& t : m.stage_timings)
    timings.push_back(
        ordered_json{{"stage", t.stage}, {"wall_seconds", t.wall_seconds}});
  j["stage_timings"] = std::move(timings);
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw CorpusError("manifest is not valid JSON");
  RunManifest m;
  try {
    m.tool_version = j.at("tool_version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.threads = j.at("threads").get<int>();
    m.config_json = j.at("config").dump();
    m.input_hashes =
        j.at("input_hashes").get<std::map<std::string, std::string>>();
    m.output_hashes =
        j.at("output_hashes").get<std::map<std::string, std::string>>();
    for (const auto& t : j.at("stage_timings"))
      m.stage_timings.push_back({t.at("stage").get<std::string>(),
                                 t.at("wall_seconds").get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw CorpusError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

void save_manifest(const RunManifest& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CorpusError("cannot write manifest '" + path.string() + "'");
  out << manifest_to_json_text(m);
}

RunManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot read manifest '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return manifest_from_json_text(buf.str());
}

}  // namespace cqabuse
