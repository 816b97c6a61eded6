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

#include "rigourate/annotator.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#include "rigourate/error.hpp"
#include "rigourate/hash.hpp"

namespace rigourate {

namespace fs = std::filesystem;

std::string_view to_string(Modality modality) {
  return modality == Modality::kVision ? "vision" : "text";
}

std::string_view to_string(AnnotationStatus status) {
  switch (status) {
    case AnnotationStatus::kOk: return "ok";
    case AnnotationStatus::kParseFailed: return "parse_failed";
    case AnnotationStatus::kTransportFailed: return "transport_failed";
  }
  return "transport_failed";
}

namespace {

template <typename T>
ParseOutcome lift(Parsed<T> parsed) {
  ParseOutcome out;
  if (parsed.value) out.value = std::move(*parsed.value);
  out.error = std::move(parsed.error);
  out.warnings = std::move(parsed.warnings);
  return out;
}

}  // namespace

ResponseParser label_parser(std::set<std::string> allowed) {
  return [allowed = std::move(allowed)](std::string_view raw) {
    return lift(parse_label_tag(raw, allowed));
  };
}

ResponseParser sentence_number_parser(std::set<SentenceId> valid_ids) {
  return [valid_ids = std::move(valid_ids)](std::string_view raw) {
    return lift(parse_sentence_numbers(raw, valid_ids));
  };
}

ResponseParser score_parser() {
  return [](std::string_view raw) {
    auto parsed = parse_score_tag(raw);
    const bool empty_justification = parsed.ok() && parsed.value->justification.empty();
    ParseOutcome out = lift(std::move(parsed));
    out.incomplete = empty_justification;
    return out;
  };
}

Annotator::Annotator(AnnotatorConfig config, std::shared_ptr<ChatBackend> backend,
                     std::shared_ptr<ResponseCache> cache)
    : config_(std::move(config)), backend_(std::move(backend)), cache_(std::move(cache)) {
  if (config_.annotator_id.empty()) {
    throw Error(ErrorKind::kPrecondition, "annotator_id empty", "annotator_id");
  }
  if (!backend_) throw Error(ErrorKind::kPrecondition, "annotator needs a backend", config_.annotator_id);
}

RawResponse Annotator::call(std::string_view template_id, const std::string& prompt,
                            const Bindings& bindings, std::span<const fs::path> images) const {
  if (!images.empty() && !is_vision()) {
    throw Error(ErrorKind::kModality,
                "modality mismatch: text annotator '" + id() + "' cannot receive images", id());
  }
  RawResponse out;
  out.cache_key =
      make_cache_key(template_id, config_.model_name, config_.temperature, prompt, images);
  if (cache_) {
    if (auto hit = cache_->get(out.cache_key)) {
      out.text = std::move(*hit);
      out.from_cache = true;
      return out;
    }
  }

  ChatRequest request;
  request.model = config_.model_name;
  request.user_prompt = prompt;
  request.images.assign(images.begin(), images.end());
  request.temperature = config_.temperature;
  request.template_id = std::string(template_id);
  request.bindings = bindings;

  const int attempts = std::max(1, config_.max_retries);
  auto delay = config_.initial_backoff;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    out.attempts = attempt;
    try {
      std::string text = backend_->complete(request);
      if (cache_) {
        nlohmann::json digest{{"template_id", template_id},
                              {"model", config_.model_name},
                              {"temperature", config_.temperature},
                              {"prompt_sha256", sha256_hex(prompt)},
                              {"images", images.size()}};
        cache_->put(out.cache_key, digest, text);
      }
      out.text = std::move(text);
      out.error.clear();
      return out;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kTransport) throw;
      out.error = e.what();
    }
    if (attempt < attempts && delay.count() > 0) {
      if (sleep_) {
        sleep_(delay);
      } else {
        std::this_thread::sleep_for(delay);
      }
      delay = std::chrono::milliseconds(
          static_cast<long long>(std::llround(static_cast<double>(delay.count()) * config_.backoff_factor)));
    }
  }
  return out;
}

AnnotationResult Annotator::annotate(const PromptTemplate& tmpl, const Bindings& bindings,
                                     std::span<const fs::path> images,
                                     const ResponseParser& parser) const {
  AnnotationResult result;
  result.annotator_id = id();
  result.template_id = tmpl.template_id;

  const std::string prompt = render_prompt(tmpl, bindings);
  RawResponse first = call(tmpl.template_id, prompt, bindings, images);
  result.cache_key = first.cache_key;
  result.attempts = first.attempts;
  result.from_cache = first.from_cache;
  if (!first.text) {
    result.status = AnnotationStatus::kTransportFailed;
    result.error = first.error;
    return result;
  }
  result.raw_text = *first.text;
  ParseOutcome outcome = parser(result.raw_text);
  if (outcome.value && !outcome.incomplete) {
    result.parsed = std::move(outcome.value);
    result.warnings = std::move(outcome.warnings);
    result.status = AnnotationStatus::kOk;
    return result;
  }

  const std::string retry_prompt = prompt + std::string(reformat_reminder(tmpl.expected_tag));
  RawResponse second = call(tmpl.template_id, retry_prompt, bindings, images);
  result.attempts += second.attempts;
  if (second.text) {
    ParseOutcome retry = parser(*second.text);
    if (retry.value && !retry.incomplete) {
      result.reformatted = true;
      result.cache_key = second.cache_key;
      result.raw_text = *second.text;
      result.parsed = std::move(retry.value);
      result.warnings = std::move(retry.warnings);
      result.warnings.push_back("first response rejected (" +
                                (outcome.error.empty() ? std::string("incomplete") : outcome.error) + ")" +
                                "; accepted the reformatted answer");
      result.status = AnnotationStatus::kOk;
      return result;
    }
    if (!outcome.value && retry.value) outcome = std::move(retry);
  }
  if (outcome.value) {
    // Usable but incomplete; the caller fills the gap.
    result.parsed = std::move(outcome.value);
    result.warnings = std::move(outcome.warnings);
    result.warnings.push_back("accepted incomplete response after reformat retry");
    result.status = AnnotationStatus::kOk;
    return result;
  }
  result.status = AnnotationStatus::kParseFailed;
  result.error = outcome.error;
  return result;
}

std::shared_ptr<ChatBackend> make_backend(const AnnotatorConfig& config, const fs::path& base_dir) {
  constexpr std::string_view kStub = "stub:";
  if (config.endpoint_url.starts_with(kStub)) {
    fs::path rules = config.endpoint_url.substr(kStub.size());
    if (rules.is_relative() && !base_dir.empty()) rules = base_dir / rules;
    return StubChatBackend::from_file(rules);
  }
  std::optional<std::string> key;
  if (!config.api_key_env.empty()) {
    if (const char* value = std::getenv(config.api_key_env.c_str())) key = value;
  }
  return std::make_shared<HttpChatBackend>(config.endpoint_url, key);
}

Panel vision_subset(const Panel& panel) {
  Panel out;
  for (const auto& a : panel) {
    if (a.is_vision()) out.push_back(a);
  }
  return out;
}

}  // namespace rigourate
