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

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace rigourate {

// Content-addressed store of raw model responses, one JSON file per key:
// {"cache_key": ..., "request": <digest>, "raw_text": ...}.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  std::optional<std::string> get(std::string_view key) const;
  void put(std::string_view key, const nlohmann::json& request_digest, std::string_view raw_text);

  std::filesystem::path path_for(std::string_view key) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

// SHA-256 over the template ID, model name, temperature, rendered prompt and
// the contents of every attached image. Missing image files contribute their
// path instead.
std::string make_cache_key(std::string_view template_id, std::string_view model_name,
                           double temperature, std::string_view prompt,
                           std::span<const std::filesystem::path> images);

}  // namespace rigourate
