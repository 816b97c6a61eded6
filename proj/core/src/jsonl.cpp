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

#include "rigourate/jsonl.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "rigourate/error.hpp"

namespace rigourate {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string(), path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
  static std::atomic<unsigned long> counter{0};
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const auto tid = std::hash<std::thread::id>{}(std::this_thread::get_id());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(tid) + "." + std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + tmp.string(), path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorKind::kIo, "short write to " + tmp.string(), path.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::kIo, "cannot rename into " + path.string(), path.string());
  }
}

std::vector<nlohmann::json> read_jsonl(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string(), path.string());
  std::vector<nlohmann::json> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::kParse,
                  path.string() + ":" + std::to_string(lineno) + ": " + e.what(), path.string());
    }
  }
  return out;
}

std::string to_jsonl(const std::vector<nlohmann::json>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

void write_jsonl(const fs::path& path, const std::vector<nlohmann::json>& records) {
  write_file_atomic(path, to_jsonl(records));
}

nlohmann::json read_json(const fs::path& path) {
  const std::string text = read_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kParse, path.string() + ": " + e.what(), path.string());
  }
}

void write_json(const fs::path& path, const nlohmann::json& value) {
  write_file_atomic(path, value.dump(2) + "\n");
}

}  // namespace rigourate
