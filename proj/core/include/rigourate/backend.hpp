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

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rigourate/prompts.hpp"

namespace rigourate {

struct ChatRequest {
  std::string model;
  std::string system_prompt;
  std::string user_prompt;
  std::vector<std::filesystem::path> images;
  double temperature = 0.0;

  // Provenance for offline backends. Never sent over the wire.
  std::string template_id;
  Bindings bindings;
};

// A chat-completion endpoint. complete() throws Error(kTransport) for
// failures that are worth retrying.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual std::string complete(const ChatRequest& request) = 0;
};

// OpenAI-style /chat/completions over HTTP(S).
class HttpChatBackend final : public ChatBackend {
 public:
  HttpChatBackend(std::string endpoint_url, std::optional<std::string> api_key,
                  std::chrono::seconds timeout = std::chrono::seconds(600));

  std::string complete(const ChatRequest& request) override;

  // Exposed for tests: the exact JSON body sent for a request.
  static nlohmann::json request_body(const ChatRequest& request);
  // Assistant text from a response body; throws Error(kTransport) when the
  // body has no choices[0].message.content.
  static std::string response_text(const nlohmann::json& body);

 private:
  std::string scheme_host_port_;
  std::string path_;
  std::optional<std::string> api_key_;
  std::chrono::seconds timeout_;
};

// Deterministic offline backend driven by a rules file:
//
//   {"rules": [{"template": "own_statement",
//               "model": "model-a" (or a list of model names),
//               "match": {"SENTENCE": "we introduce"},
//               "prompt_contains": "...",
//               "response": "<Label>original_statement</Label>",
//               "fail": false}],
//    "defaults": {"own_statement": "<Label>not_original_statement</Label>"},
//    "default": "...",
//    "fail": false}
//
// The first rule whose template, model, binding substrings and prompt substring all
// match wins; then the per-template default, then the global default. A
// matching "fail": true (or a top-level "fail": true) raises a transport
// error. Anything unmatched is a transport error as well.
class StubChatBackend final : public ChatBackend {
 public:
  explicit StubChatBackend(nlohmann::json rules);
  static std::shared_ptr<StubChatBackend> from_file(const std::filesystem::path& path);

  std::string complete(const ChatRequest& request) override;

  std::size_t calls() const { return calls_.load(); }

 private:
  nlohmann::json rules_;
  std::atomic<std::size_t> calls_{0};
};

// Wraps a callable; handy for tests.
class FunctionChatBackend final : public ChatBackend {
 public:
  using Fn = std::function<std::string(const ChatRequest&)>;
  explicit FunctionChatBackend(Fn fn) : fn_(std::move(fn)) {}
  std::string complete(const ChatRequest& request) override { return fn_(request); }

 private:
  Fn fn_;
};

std::string image_mime_type(const std::filesystem::path& path);

}  // namespace rigourate
