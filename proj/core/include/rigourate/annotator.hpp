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

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rigourate/backend.hpp"
#include "rigourate/cache.hpp"
#include "rigourate/prompts.hpp"
#include "rigourate/tags.hpp"

namespace rigourate {

enum class Modality { kText, kVision };

std::string_view to_string(Modality modality);

struct AnnotatorConfig {
  std::string annotator_id;
  // http(s)://... for a chat-completion server, stub:<rules.json> for the
  // offline backend.
  std::string endpoint_url;
  std::string model_name;
  Modality modality = Modality::kText;
  // Total transport attempts per request.
  int max_retries = 3;
  double temperature = 0.0;
  // Environment variable holding the API key; empty when none is needed.
  std::string api_key_env;
  std::chrono::milliseconds initial_backoff{500};
  double backoff_factor = 2.0;
};

enum class AnnotationStatus { kOk, kParseFailed, kTransportFailed };

std::string_view to_string(AnnotationStatus status);

using ParsedValue = std::variant<std::string, std::vector<SentenceId>, ScoreJustification>;

// A parser adapter result. `incomplete` marks a usable value that still
// deserves a reformat retry (e.g. a score without justification).
struct ParseOutcome {
  std::optional<ParsedValue> value;
  bool incomplete = false;
  std::string error;
  std::vector<std::string> warnings;
};

using ResponseParser = std::function<ParseOutcome(std::string_view raw)>;

ResponseParser label_parser(std::set<std::string> allowed);
ResponseParser sentence_number_parser(std::set<SentenceId> valid_ids);
ResponseParser score_parser();

struct AnnotationResult {
  std::string annotator_id;
  std::string template_id;
  std::string cache_key;
  std::string raw_text;
  std::optional<ParsedValue> parsed;
  AnnotationStatus status = AnnotationStatus::kTransportFailed;
  std::string error;
  std::vector<std::string> warnings;
  int attempts = 0;
  bool from_cache = false;
  bool reformatted = false;

  bool ok() const { return status == AnnotationStatus::kOk; }
  template <typename T>
  const T& value() const {
    return std::get<T>(*parsed);
  }
};

// Result of the transport/cache layer only.
struct RawResponse {
  std::string cache_key;
  std::optional<std::string> text;
  std::string error;
  int attempts = 0;
  bool from_cache = false;
};

class Annotator {
 public:
  Annotator(AnnotatorConfig config, std::shared_ptr<ChatBackend> backend,
            std::shared_ptr<ResponseCache> cache = nullptr);

  const AnnotatorConfig& config() const { return config_; }
  const std::string& id() const { return config_.annotator_id; }
  bool is_vision() const { return config_.modality == Modality::kVision; }

  // Cache lookup, then up to max_retries transport attempts with exponential
  // backoff. A fresh response is persisted before returning. Throws
  // Error(kModality) when a text-only annotator is given images.
  RawResponse call(std::string_view template_id, const std::string& prompt,
                   const Bindings& bindings,
                   std::span<const std::filesystem::path> images = {}) const;

  // Renders, calls and parses. A parse failure (or incomplete parse) earns one
  // extra call with a format reminder appended to the prompt.
  AnnotationResult annotate(const PromptTemplate& tmpl, const Bindings& bindings,
                            std::span<const std::filesystem::path> images,
                            const ResponseParser& parser) const;

  // Replaces std::this_thread::sleep_for between retries.
  void set_sleep(std::function<void(std::chrono::milliseconds)> sleep) { sleep_ = std::move(sleep); }

 private:
  AnnotatorConfig config_;
  std::shared_ptr<ChatBackend> backend_;
  std::shared_ptr<ResponseCache> cache_;
  std::function<void(std::chrono::milliseconds)> sleep_;
};

using Panel = std::vector<Annotator>;

// Backend for a config: "stub:<path>" (relative paths resolve against
// `base_dir`) or an HTTP(S) URL using the key in config.api_key_env.
std::shared_ptr<ChatBackend> make_backend(const AnnotatorConfig& config,
                                          const std::filesystem::path& base_dir = {});

Panel vision_subset(const Panel& panel);

}  // namespace rigourate
