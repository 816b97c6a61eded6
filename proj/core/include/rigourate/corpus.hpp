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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rigourate/segmenter.hpp"

namespace rigourate {

using SentenceId = std::uint32_t;

enum class Venue { kIclr, kNeurips, kOther };
enum class Origin { kAbstract, kIntroduction, kBody };
enum class VisualKind { kFigure, kTable };

std::string_view to_string(Venue venue);
std::string_view to_string(Origin origin);
std::string_view to_string(VisualKind kind);
Venue parse_venue(std::string_view text);

struct SentenceUnit {
  SentenceId id = 0;
  std::string text;
  Origin origin = Origin::kBody;

  friend bool operator==(const SentenceUnit&, const SentenceUnit&) = default;
};

struct Section {
  std::string section_id;
  std::string title;
  std::vector<SentenceUnit> sentences;
};

struct VisualItem {
  std::string visual_id;
  VisualKind kind = VisualKind::kFigure;
  std::string caption;
  std::optional<std::string> extracted_text;
  std::optional<std::string> image_ref;
};

struct ReviewComment {
  std::string review_id;
  std::string text;
  int overall_score = 0;
};

// One validated paper. Sentence IDs are paper-global and dense: abstract
// sentences first, then introduction, then body sections in order.
struct PaperDocument {
  std::string paper_id;
  Venue venue = Venue::kOther;
  std::string abstract;
  std::string introduction;
  std::vector<SentenceUnit> abstract_sentences;
  std::vector<SentenceUnit> introduction_sentences;
  std::vector<Section> body_sections;
  std::vector<VisualItem> visuals;
  std::vector<ReviewComment> reviews;
  std::vector<int> reviewer_overall_scores;

  // Abstract followed by introduction sentences: the only claim candidates.
  std::vector<SentenceUnit> claim_candidates() const;
  std::vector<SentenceUnit> body_sentences() const;
  std::size_t sentence_count() const;
  const SentenceUnit* find_sentence(SentenceId id) const;
  const ReviewComment* find_review(std::string_view review_id) const;
  const VisualItem* find_visual(std::string_view visual_id) const;
};

// Builds a document from the on-disk input schema, segmenting every text
// field and assigning sentence IDs. Throws Error naming the offending field.
PaperDocument paper_from_input_json(const nlohmann::json& input,
                                    const SentenceSegmenter& segmenter = *default_segmenter());

PaperDocument load_paper(const std::filesystem::path& path,
                         const SentenceSegmenter& segmenter = *default_segmenter());

// Loads every *.json file in `dir` in lexicographic path order and rejects
// duplicate paper IDs.
std::vector<PaperDocument> load_corpus(const std::filesystem::path& dir,
                                       const SentenceSegmenter& segmenter = *default_segmenter());

// Checks every document invariant; throws Error(kValidation) on the first
// violation.
void validate(const PaperDocument& paper);

// Keeps papers whose reviewers all gave the same overall score. Papers without
// scores are dropped.
std::vector<PaperDocument> filter_unanimous(const std::vector<PaperDocument>& papers);

}  // namespace rigourate
