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

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rigourate/corpus.hpp"

namespace rigourate {

// Outcome of reading a tagged model response. Parsers never throw: any input
// maps to either a value (ok) or an error message (parse failure).
template <typename T>
struct Parsed {
  std::optional<T> value;
  std::string error;
  std::vector<std::string> warnings;

  bool ok() const { return value.has_value(); }
};

struct ScoreJustification {
  double score = 0.0;
  std::string justification;

  friend bool operator==(const ScoreJustification&, const ScoreJustification&) = default;
};

// Scores this close outside [0, 1] are clamped onto the boundary.
inline constexpr double kScoreBoundaryTolerance = 1e-9;

// Body of the last well-formed <tag>...</tag> pair. Tag names match
// case-insensitively; an opening tag re-opened before it is closed starts a
// new pair.
std::optional<std::string> last_tag_body(std::string_view raw, std::string_view tag);

Parsed<std::string> parse_label_tag(std::string_view raw, const std::set<std::string>& allowed);

// Sorted, de-duplicated IDs from the last <Label> tag. IDs outside `valid_ids`
// are dropped with a warning; an empty tag is a valid "no evidence" answer.
Parsed<std::vector<SentenceId>> parse_sentence_numbers(std::string_view raw,
                                                       const std::set<SentenceId>& valid_ids);

// Justification comes from the last <justification> tag or, when absent,
// from the prose that follows the score tag. It may be empty.
Parsed<ScoreJustification> parse_score_tag(std::string_view raw);

}  // namespace rigourate
