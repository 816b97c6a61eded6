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

#include "rigourate/prompts.hpp"

#include <optional>
#include <set>

#include "rigourate/error.hpp"

namespace rigourate {

std::string_view to_string(ExpectedTag tag) {
  switch (tag) {
    case ExpectedTag::kLabel: return "label";
    case ExpectedTag::kSentenceNumbers: return "sentence_numbers";
    case ExpectedTag::kScoreAndJustification: return "score_and_justification";
  }
  return "label";
}

namespace {

bool is_name_char(char c) { return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_'; }

// If a placeholder starts at body[pos] ('{'), returns its name.
std::optional<std::string> placeholder_at(std::string_view body, std::size_t pos) {
  if (body[pos] != '{') return std::nullopt;
  const std::size_t close = body.find('}', pos + 1);
  if (close == std::string_view::npos || close == pos + 1) return std::nullopt;
  const std::string_view name = body.substr(pos + 1, close - pos - 1);
  if (!(name.front() >= 'A' && name.front() <= 'Z') || name.back() == ' ') return std::nullopt;
  for (char c : name) {
    if (!is_name_char(c) && c != ' ') return std::nullopt;
  }
  return std::string(name);
}

struct OptionalBlock {
  std::size_t open_begin, open_end, close_begin, close_end;
  std::string name;
};

std::optional<OptionalBlock> next_block(std::string_view body, std::size_t from) {
  const std::size_t open = body.find("[[?", from);
  if (open == std::string_view::npos) return std::nullopt;
  const std::size_t open_end = body.find("]]", open);
  if (open_end == std::string_view::npos) {
    throw Error(ErrorKind::kPrecondition, "unterminated optional block marker", "template");
  }
  std::string name(body.substr(open + 3, open_end - open - 3));
  const std::string close_marker = "[[/" + name + "]]";
  const std::size_t close = body.find(close_marker, open_end + 2);
  if (close == std::string_view::npos) {
    throw Error(ErrorKind::kPrecondition, "optional block " + name + " is not closed", name);
  }
  return OptionalBlock{open, open_end + 2, close, close + close_marker.size(), std::move(name)};
}

std::string resolve_blocks(std::string_view body, const Bindings& bindings) {
  std::string out;
  std::size_t pos = 0;
  while (auto block = next_block(body, pos)) {
    out.append(body.substr(pos, block->open_begin - pos));
    if (bindings.contains(block->name)) {
      out.append(body.substr(block->open_end, block->close_begin - block->open_end));
    }
    pos = block->close_end;
  }
  out.append(body.substr(pos));
  return out;
}

}  // namespace

std::vector<std::string> placeholders(const PromptTemplate& tmpl) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  const std::string_view body = tmpl.body;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (auto name = placeholder_at(body, i); name && seen.insert(*name).second) {
      names.push_back(*name);
    }
  }
  return names;
}

std::string render_prompt(const PromptTemplate& tmpl, const Bindings& bindings) {
  const std::string body = resolve_blocks(tmpl.body, bindings);
  std::string out;
  out.reserve(body.size());
  std::size_t i = 0;
  while (i < body.size()) {
    if (auto name = placeholder_at(body, i)) {
      auto it = bindings.find(*name);
      if (it == bindings.end()) {
        throw Error(ErrorKind::kPrecondition,
                    "template '" + tmpl.template_id + "' has no binding for placeholder {" +
                        *name + "}",
                    *name);
      }
      out += it->second;
      i += name->size() + 2;
      continue;
    }
    out.push_back(body[i]);
    ++i;
  }
  return out;
}

std::string_view reformat_reminder(ExpectedTag tag) {
  switch (tag) {
    case ExpectedTag::kLabel:
      return "\n\nYour previous answer could not be read. Reply again and end with the final "
             "label in the format: <Label>{your_label}</Label>";
    case ExpectedTag::kSentenceNumbers:
      return "\n\nYour previous answer could not be read. Reply again and end with the "
             "supporting sentence numbers, one per line, in the format:\n<Label>\n{sentence "
             "numbers}\n</Label>";
    case ExpectedTag::kScoreAndJustification:
      return "\n\nYour previous answer could not be read. Reply again with the final score in "
             "the format <score>{score}</score> followed by a non-empty "
             "<justification>{justification}</justification>.";
  }
  return {};
}

namespace templates {

const PromptTemplate& own_statement() {
  static const PromptTemplate kTemplate{
      std::string(kOwnStatementId),
      R"(You will be provided with the abstract and introduction of an academic paper along with a specific sentence from the paper. Your task is to determine whether the given sentence represents an original claim introduced by the authors that is directly relevant to the contribution or selling points of the paper.

Labels:

original_statement: The sentence explicitly presents a novel claim, finding, or result that is directly relevant to the key contributions of the paper. It reflects what the authors are aiming to promote or highlight as a significant contribution.

not_original_statement: The sentence mainly provides background information, references prior work, describes common knowledge, or includes general context not directly tied to the unique contributions of the paper.

The abstract and introduction of the paper:

Abstract:

{ABSTRACT}

Introduction:

{INTRODUCTION}

The sentence you are about to annotate:

{SENTENCE}

You should:

1. Carefully review the context of the paper (abstract and introduction) and the given sentence. Then briefly justify whether the sentence is an original_statement or not_original_statement (up to 100 words).
2. Provide the final annotation label in the format: <Label>{your_label}</Label>
)",
      ExpectedTag::kLabel};
  return kTemplate;
}

const PromptTemplate& text_evidence() {
  static const PromptTemplate kTemplate{
      std::string(kTextEvidenceId),
      R"(You will be given a claim and a list of sentences. Your task is to identify the sentences that support the claim.

A sentence supports the claim if it:

- Directly provides evidence (e.g., experimental results, analysis, conclusions).
- Builds upon the claim by providing relevant context (e.g., background information).

A supporting sentence must not:

- Be a duplicate or paraphrase of the claim.
- Be incomplete.
- Contain text that appears to be part of an OCR-extracted table or figure (e.g., columns of numbers, symbols, "Table 1", or values not from a sentence). Such lines should always be ignored.

The sentences are numbered, and you should return only the numbers of the supporting sentences.

Claim:
{CLAIM}

Sentences to evaluate:
{NUMBERED SENTENCES}

Instructions:

Carefully review the claim and sentences. Provide a brief justification (≤ 100 words) for which sentences support the claim.

If multiple sentences support the claim, list each number on a new line. If no sentences support the claim, return an empty <Label> tag.

Provide the final annotation label in the format:

<Label>
{sentence numbers}
</Label>
)",
      ExpectedTag::kSentenceNumbers};
  return kTemplate;
}

const PromptTemplate& visual_evidence() {
  static const PromptTemplate kTemplate{
      std::string(kVisualEvidenceId),
      R"(You will be provided with a research claim and a {FIG_TYPE} (figure or table) extracted from an academic paper.

Your task is to determine whether the visual content is relevant to the claim – that is, whether it provides evidence or context supporting the claim.

A visual is relevant if it:

- Directly provides evidence (e.g., experimental results, analysis, conclusions).
- Builds upon the claim by providing relevant context (e.g., background information).

A visual is not relevant if it:

- Contains no data or analysis tied to the claim.
- Shows unrelated or generic material.
- Is incomplete, unreadable, or too vague to judge its relevance.

Labels:

relevant: The visual supports or builds upon the claim.

not_relevant: The visual is unrelated to the claim.

Claim:

{CLAIM}

Visual information:

Type: {FIG_TYPE}

Caption: {CAPTION}

Visible text: {IMAGE_TEXT}

Instructions:

1. Carefully review the claim and the visual.
2. Briefly justify (≤ 100 words) whether the visual is relevant or not.
3. Provide the final label in this format:
<Label>{relevant OR not_relevant}</Label>
)",
      ExpectedTag::kLabel};
  return kTemplate;
}

const PromptTemplate& overstatement() {
  static const PromptTemplate kTemplate{
      std::string(kOverstatementId),
      R"(Your role is to assess the degree to which a claim is overstated based on the available evidence.

“Overclaiming” refers to rhetorical exaggeration: when the wording or framing of a claim amplifies its strength beyond what the paper’s own evidence supports.

It concerns rhetorical and linguistic inflation rather than factual correctness.

The Input Information will include:

1. Original Claim: The claim under evaluation.
2. Evidence: Research findings, including figures, tables, or other relevant data supporting the claim.

Optional. Review comment: Reviewer feedback relevant to the claim’s validity.

Evaluate the claim against the provided evidence. Assign a score from 0 to 1 representing the degree of exaggeration using the following scale:

0.0: The claim contains no exaggeration and fully aligns with the evidence.

Values closer to 0: Minor exaggeration or slight over-interpretation.

Values closer to 1: Substantial exaggeration beyond what the evidence supports.

1.0: Major exaggeration or strong misrepresentation of the evidence.

Justification: Provide a concise explanation that includes:

Instances of exaggerated wording, insufficient experiments, lack of experimental details, gaps in knowledge, weak grounding in evidence, or missing limitations.

Direct references to the relevant evidence supporting your reasoning.

If a review comment is included, consider relevant points but do not mention or reference the review.

Do not mention or restate the score in the justification.

The claim to be assessed is:

{CLAIM}

[[?REVIEW]]The review comment to be evaluated is:

{REVIEW}

[[/REVIEW]]The evidence to be evaluated is:

{EVIDENCE}

You should:

1. Review the claim and the text and image evidence. Summarize how the evidence influences your evaluation of the claim and briefly explain whether the claim is well-stated or overstated on the 0-1 scale (up to 100 words).

2. Provide the final score in the format: <score>{score}</score>.

3. Provide your justification in the format: <justification>{justification}</justification>.
)",
      ExpectedTag::kScoreAndJustification};
  return kTemplate;
}

const PromptTemplate& by_id(std::string_view template_id) {
  if (template_id == kOwnStatementId) return own_statement();
  if (template_id == kTextEvidenceId) return text_evidence();
  if (template_id == kVisualEvidenceId) return visual_evidence();
  if (template_id == kOverstatementId) return overstatement();
  throw Error(ErrorKind::kPrecondition, "unknown template '" + std::string(template_id) + "'",
              std::string(template_id));
}

}  // namespace templates

}  // namespace rigourate
