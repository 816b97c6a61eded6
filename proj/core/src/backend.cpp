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

#include "rigourate/backend.hpp"

#include <httplib.h>

#include <algorithm>

#include "rigourate/error.hpp"
#include "rigourate/hash.hpp"
#include "rigourate/jsonl.hpp"

namespace rigourate {

namespace fs = std::filesystem;
using nlohmann::json;

std::string image_mime_type(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".gif") return "image/gif";
  if (ext == ".webp") return "image/webp";
  return "image/png";
}

HttpChatBackend::HttpChatBackend(std::string endpoint_url, std::optional<std::string> api_key,
                                 std::chrono::seconds timeout)
    : api_key_(std::move(api_key)), timeout_(timeout) {
  const std::size_t scheme_end = endpoint_url.find("://");
  const std::string scheme =
      scheme_end == std::string::npos ? std::string() : endpoint_url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw Error(ErrorKind::kPrecondition, "endpoint URL must start with http:// or https://: " + endpoint_url,
                "endpoint_url");
  }
  const std::size_t path_begin = endpoint_url.find('/', scheme_end + 3);
  if (path_begin == std::string::npos) {
    scheme_host_port_ = endpoint_url;
    path_ = "/v1/chat/completions";
  } else {
    scheme_host_port_ = endpoint_url.substr(0, path_begin);
    path_ = endpoint_url.substr(path_begin);
  }
}

json HttpChatBackend::request_body(const ChatRequest& request) {
  json messages = json::array();
  if (!request.system_prompt.empty()) {
    messages.push_back({{"role", "system"}, {"content", request.system_prompt}});
  }
  if (request.images.empty()) {
    messages.push_back({{"role", "user"}, {"content", request.user_prompt}});
  } else {
    json content = json::array();
    content.push_back({{"type", "text"}, {"text", request.user_prompt}});
    for (const auto& image : request.images) {
      const std::string url =
          "data:" + image_mime_type(image) + ";base64," + base64_encode(read_file(image));
      content.push_back({{"type", "image_url"}, {"image_url", {{"url", url}}}});
    }
    messages.push_back({{"role", "user"}, {"content", std::move(content)}});
  }
  return json{{"model", request.model},
              {"messages", std::move(messages)},
              {"temperature", request.temperature}};
}

std::string HttpChatBackend::response_text(const json& body) {
  try {
    const json& content = body.at("choices").at(0).at("message").at("content");
    if (content.is_string()) return content.get<std::string>();
    // Some servers return content parts.
    std::string text;
    for (const auto& part : content) {
      if (part.value("type", "") == "text") text += part.value("text", "");
    }
    return text;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kTransport, std::string("malformed chat response: ") + e.what());
  }
}

std::string HttpChatBackend::complete(const ChatRequest& request) {
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(std::chrono::seconds(10));
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  httplib::Headers headers;
  if (api_key_) headers.emplace("Authorization", "Bearer " + *api_key_);

  const std::string body = request_body(request).dump();
  auto result = client.Post(path_, headers, body, "application/json");
  if (!result) {
    throw Error(ErrorKind::kTransport,
                "request to " + scheme_host_port_ + path_ + " failed: " +
                    httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw Error(ErrorKind::kTransport, "HTTP " + std::to_string(result->status) + " from " +
                                           scheme_host_port_ + path_);
  }
  json parsed;
  try {
    parsed = json::parse(result->body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kTransport, std::string("response is not JSON: ") + e.what());
  }
  return response_text(parsed);
}

StubChatBackend::StubChatBackend(json rules) : rules_(std::move(rules)) {
  if (!rules_.is_object()) {
    throw Error(ErrorKind::kParse, "stub rules must be a JSON object", "rules");
  }
}

std::shared_ptr<StubChatBackend> StubChatBackend::from_file(const fs::path& path) {
  return std::make_shared<StubChatBackend>(read_json(path));
}

namespace {

bool rule_matches(const json& rule, const ChatRequest& request) {
  if (auto it = rule.find("template"); it != rule.end() && *it != request.template_id) return false;
  if (auto it = rule.find("model"); it != rule.end()) {
    if (it->is_array()) {
      if (std::find(it->begin(), it->end(), request.model) == it->end()) return false;
    } else if (*it != request.model) {
      return false;
    }
  }
  if (auto it = rule.find("prompt_contains"); it != rule.end()) {
    if (request.user_prompt.find(it->get<std::string>()) == std::string::npos) return false;
  }
  if (auto it = rule.find("match"); it != rule.end()) {
    for (const auto& [name, needle] : it->items()) {
      auto bound = request.bindings.find(name);
      if (bound == request.bindings.end()) return false;
      if (bound->second.find(needle.get<std::string>()) == std::string::npos) return false;
    }
  }
  return true;
}

}  // namespace

std::string StubChatBackend::complete(const ChatRequest& request) {
  ++calls_;
  if (rules_.value("fail", false)) throw Error(ErrorKind::kTransport, "stub endpoint is down");
  if (auto it = rules_.find("rules"); it != rules_.end()) {
    for (const auto& rule : *it) {
      if (!rule_matches(rule, request)) continue;
      if (rule.value("fail", false)) throw Error(ErrorKind::kTransport, "stub rule forces failure");
      return rule.at("response").get<std::string>();
    }
  }
  if (auto it = rules_.find("defaults"); it != rules_.end() && it->contains(request.template_id)) {
    return it->at(request.template_id).get<std::string>();
  }
  if (auto it = rules_.find("default"); it != rules_.end()) return it->get<std::string>();
  throw Error(ErrorKind::kTransport, "stub has no response for template '" + request.template_id + "'");
}

}  // namespace rigourate
