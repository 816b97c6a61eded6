// Copyright 2026 The Rigourate Authors
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

#include "rigourate/cache.hpp"

#include <fmt/format.h>

#include "rigourate/error.hpp"
#include "rigourate/hash.hpp"
#include "rigourate/jsonl.hpp"

namespace rigourate {

namespace fs = std::filesystem;
using nlohmann::json;

ResponseCache::ResponseCache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

fs::path ResponseCache::path_for(std::string_view key) const {
  return dir_ / (std::string(key) + ".json");
}

std::optional<std::string> ResponseCache::get(std::string_view key) const {
  const fs::path path = path_for(key);
  if (!fs::exists(path)) return std::nullopt;
  json entry;
  try {
    entry = read_json(path);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!entry.is_object() || entry.value("cache_key", "") != key || !entry.contains("raw_text")) {
    return std::nullopt;
  }
  return entry.at("raw_text").get<std::string>();
}

void ResponseCache::put(std::string_view key, const json& request_digest,
                        std::string_view raw_text) {
  json entry{{"cache_key", key}, {"request", request_digest}, {"raw_text", raw_text}};
  write_file_atomic(path_for(key), entry.dump(2) + "\n");
}

std::string make_cache_key(std::string_view template_id, std::string_view model_name,
                           double temperature, std::string_view prompt,
                           std::span<const fs::path> images) {
  json parts = json::array();
  parts.push_back(template_id);
  parts.push_back(model_name);
  parts.push_back(fmt::format("{:.17g}", temperature));
  parts.push_back(sha256_hex(prompt));
  json image_digests = json::array();
  for (const auto& image : images) {
    std::error_code ec;
    if (fs::is_regular_file(image, ec)) {
      image_digests.push_back(sha256_hex(read_file(image)));
    } else {
      image_digests.push_back("missing:" + image.generic_string());
    }
  }
  parts.push_back(std::move(image_digests));
  return sha256_hex(parts.dump());
}

}  // namespace rigourate
