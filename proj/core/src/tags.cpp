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

#include "rigourate/tags.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace rigourate {

namespace {

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

// Case-insensitive find of `needle` in `hay` starting at `from`.
std::size_t ifind(std::string_view hay, std::string_view needle, std::size_t from) {
  if (needle.empty() || hay.size() < needle.size()) return std::string_view::npos;
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      if (lower(hay[i + j]) != lower(needle[j])) {
        match = false;
        break;
      }
    }
    if (match) return i;
  }
  return std::string_view::npos;
}

struct TagSpan {
  std::size_t body_begin, body_end, close_end;
};

std::optional<TagSpan> last_tag(std::string_view raw, std::string_view tag) {
  const std::string open = "<" + std::string(tag) + ">";
  const std::string close = "</" + std::string(tag) + ">";
  std::optional<TagSpan> last;
  std::size_t pos = ifind(raw, open, 0);
  while (pos != std::string_view::npos) {
    const std::size_t body_begin = pos + open.size();
    const std::size_t close_pos = ifind(raw, close, body_begin);
    if (close_pos == std::string_view::npos) break;
    const std::size_t reopen = ifind(raw, open, body_begin);
    if (reopen != std::string_view::npos && reopen < close_pos) {
      pos = reopen;
      continue;
    }
    last = TagSpan{body_begin, close_pos, close_pos + close.size()};
    pos = ifind(raw, open, close_pos + close.size());
  }
  return last;
}

std::string_view trim(std::string_view s) {
  const auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
  return s;
}

// Models sometimes echo the template's decoration around a label.
std::string_view strip_decoration(std::string_view s) {
  s = trim(s);
  const auto is_deco = [](char c) {
    return c == '{' || c == '}' || c == '`' || c == '"' || c == '\'' || c == '*';
  };
  while (!s.empty() && is_deco(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_deco(s.back())) s.remove_suffix(1);
  return trim(s);
}

}  // namespace

std::optional<std::string> last_tag_body(std::string_view raw, std::string_view tag) {
  auto span = last_tag(raw, tag);
  if (!span) return std::nullopt;
  return std::string(raw.substr(span->body_begin, span->body_end - span->body_begin));
}

Parsed<std::string> parse_label_tag(std::string_view raw, const std::set<std::string>& allowed) {
  Parsed<std::string> out;
  auto body = last_tag_body(raw, "Label");
  if (!body) {
    out.error = "no well-formed <Label> tag";
    return out;
  }
  const std::string label(strip_decoration(*body));
  if (!allowed.contains(label)) {
    out.error = "label '" + label + "' is not an allowed value";
    return out;
  }
  out.value = label;
  return out;
}

Parsed<std::vector<SentenceId>> parse_sentence_numbers(std::string_view raw,
                                                       const std::set<SentenceId>& valid_ids) {
  Parsed<std::vector<SentenceId>> out;
  auto body = last_tag_body(raw, "Label");
  if (!body) {
    out.error = "no well-formed <Label> tag";
    return out;
  }
  std::set<SentenceId> ids;
  std::string_view rest = *body;
  const auto is_sep = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' || c == ';';
  };
  while (!rest.empty()) {
    while (!rest.empty() && is_sep(rest.front())) rest.remove_prefix(1);
    if (rest.empty()) break;
    std::size_t len = 0;
    while (len < rest.size() && !is_sep(rest[len])) ++len;
    std::string_view token = rest.substr(0, len);
    rest.remove_prefix(len);

    std::string_view digits = token;
    if (digits.size() >= 2 && digits.front() == '[' && digits.back() == ']') {
      digits = digits.substr(1, digits.size() - 2);
    } else if (!digits.empty() && digits.back() == '.') {
      digits.remove_suffix(1);
    }
    unsigned long long value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
      out.error = "non-numeric token '" + std::string(token) + "' in <Label>";
      return out;
    }
    if (value > std::numeric_limits<SentenceId>::max() ||
        !valid_ids.contains(static_cast<SentenceId>(value))) {
      out.warnings.push_back("sentence number " + std::to_string(value) +
                             " is out of range and was dropped");
      continue;
    }
    ids.insert(static_cast<SentenceId>(value));
  }
  out.value = std::vector<SentenceId>(ids.begin(), ids.end());
  return out;
}

Parsed<ScoreJustification> parse_score_tag(std::string_view raw) {
  Parsed<ScoreJustification> out;
  auto span = last_tag(raw, "score");
  if (!span) {
    out.error = "no well-formed <score> tag";
    return out;
  }
  const std::string_view text =
      strip_decoration(raw.substr(span->body_begin, span->body_end - span->body_begin));
  double score = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), score);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    out.error = "score '" + std::string(text) + "' is not a number";
    return out;
  }
  if (!std::isfinite(score)) {
    out.error = "score is not finite";
    return out;
  }
  if (score < -kScoreBoundaryTolerance || score > 1.0 + kScoreBoundaryTolerance) {
    out.error = "score " + std::string(text) + " is outside [0, 1]";
    return out;
  }
  score = std::clamp(score, 0.0, 1.0);

  std::string justification;
  if (auto body = last_tag_body(raw, "justification")) {
    justification = std::string(trim(*body));
  } else {
    justification = std::string(trim(raw.substr(span->close_end)));
  }
  out.value = ScoreJustification{score, std::move(justification)};
  return out;
}

}  // namespace rigourate
