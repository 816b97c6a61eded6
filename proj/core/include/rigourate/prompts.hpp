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

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rigourate {

enum class ExpectedTag { kLabel, kSentenceNumbers, kScoreAndJustification };

std::string_view to_string(ExpectedTag tag);

// Placeholders are written {NAME} where NAME is upper-case letters, digits,
// underscores and inner spaces ("{NUMBERED SENTENCES}"). Braces around
// anything else ("{your_label}") are literal text.
//
// An optional block [[?NAME]] ... [[/NAME]] is kept (markers stripped) when
// NAME is bound and removed entirely, markers and contents, when it is not.
struct PromptTemplate {
  std::string template_id;
  std::string body;
  ExpectedTag expected_tag = ExpectedTag::kLabel;
};

using Bindings = std::map<std::string, std::string>;

// Placeholder names in order of first appearance, optional blocks included.
std::vector<std::string> placeholders(const PromptTemplate& tmpl);

// Throws Error(kPrecondition) naming the first unbound placeholder. Bound
// values are inserted verbatim and never re-scanned.
std::string render_prompt(const PromptTemplate& tmpl, const Bindings& bindings);

// Appended to a prompt for the single reformat retry after a parse failure.
std::string_view reformat_reminder(ExpectedTag tag);

namespace templates {

inline constexpr std::string_view kOwnStatementId = "own_statement";
inline constexpr std::string_view kTextEvidenceId = "text_evidence";
inline constexpr std::string_view kVisualEvidenceId = "visual_evidence";
inline constexpr std::string_view kOverstatementId = "overstatement";

// Sentence classification; binds ABSTRACT, INTRODUCTION, SENTENCE.
const PromptTemplate& own_statement();
// Supporting sentence selection; binds CLAIM, NUMBERED SENTENCES.
const PromptTemplate& text_evidence();
// Figure/table relevance; binds FIG_TYPE, CLAIM, CAPTION, IMAGE_TEXT.
const PromptTemplate& visual_evidence();
// Overstatement scoring; binds CLAIM, EVIDENCE and optionally REVIEW.
const PromptTemplate& overstatement();

const PromptTemplate& by_id(std::string_view template_id);

}  // namespace templates

// Fixed wording of the exported fine-tuning records.
namespace export_prompts {

inline constexpr std::string_view kRetrievalSystem =
    "You are an evidence verification assistant. Given a claim and a document, determine if the "
    "document provides supporting evidence for the claim.";
inline constexpr std::string_view kRetrievalInstruction =
    "INSTRUCTION: Does the following document provide supporting evidence for the claim?";
inline constexpr std::string_view kScorerSystem =
    "You are a model specialized in assessing overstated claims using text and image evidence. You "
    "must score each claim based on how overstated or exaggerated it is with respect to the evidence, "
    "on a continuous scale from 0 to 1 where 0 means well-stated and 1 means overstated. Provide the "
    "final score as <score>value</score> followed by a brief reasoning.";

}  // namespace export_prompts

}  // namespace rigourate
