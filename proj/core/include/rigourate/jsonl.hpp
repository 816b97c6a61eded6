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
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace rigourate {

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it into place, so readers never
// observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

// Line-delimited JSON. Keys are emitted in sorted order (nlohmann default),
// which keeps record files byte-stable.
std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path);
std::string to_jsonl(const std::vector<nlohmann::json>& records);
void write_jsonl(const std::filesystem::path& path, const std::vector<nlohmann::json>& records);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& value);

}  // namespace rigourate
