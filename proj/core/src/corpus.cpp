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

#include "rigourate/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "rigourate/error.hpp"
#include "rigourate/jsonl.hpp"

namespace rigourate {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Venue venue) {
  switch (venue) {
    case Venue::kIclr: return "ICLR";
    case Venue::kNeurips: return "NeurIPS";
    case Venue::kOther: return "other";
  }
  return "other";
}

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::kAbstract: return "abstract";
    case Origin::kIntroduction: return "introduction";
    case Origin::kBody: return "body";
  }
  return "body";
}

std::string_view to_string(VisualKind kind) {
  return kind == VisualKind::kFigure ? "figure" : "table";
}

Venue parse_venue(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "iclr") return Venue::kIclr;
  if (lower == "neurips" || lower == "nips") return Venue::kNeurips;
  return Venue::kOther;
}

std::vector<SentenceUnit> PaperDocument::claim_candidates() const {
  std::vector<SentenceUnit> out = abstract_sentences;
  out.insert(out.end(), introduction_sentences.begin(), introduction_sentences.end());
  return out;
}

std::vector<SentenceUnit> PaperDocument::body_sentences() const {
  std::vector<SentenceUnit> out;
  for (const auto& s : body_sections) out.insert(out.end(), s.sentences.begin(), s.sentences.end());
  return out;
}

std::size_t PaperDocument::sentence_count() const {
  std::size_t n = abstract_sentences.size() + introduction_sentences.size();
  for (const auto& s : body_sections) n += s.sentences.size();
  return n;
}

const SentenceUnit* PaperDocument::find_sentence(SentenceId id) const {
  auto search = [id](const std::vector<SentenceUnit>& units) -> const SentenceUnit* {
    if (units.empty() || id < units.front().id || id > units.back().id) return nullptr;
    return &units[id - units.front().id];
  };
  if (auto* s = search(abstract_sentences)) return s;
  if (auto* s = search(introduction_sentences)) return s;
  for (const auto& section : body_sections) {
    if (auto* s = search(section.sentences)) return s;
  }
  return nullptr;
}

const ReviewComment* PaperDocument::find_review(std::string_view review_id) const {
  auto it = std::find_if(reviews.begin(), reviews.end(),
                         [&](const ReviewComment& r) { return r.review_id == review_id; });
  return it == reviews.end() ? nullptr : &*it;
}

const VisualItem* PaperDocument::find_visual(std::string_view visual_id) const {
  auto it = std::find_if(visuals.begin(), visuals.end(),
                         [&](const VisualItem& v) { return v.visual_id == visual_id; });
  return it == visuals.end() ? nullptr : &*it;
}

namespace {

[[noreturn]] void fail_field(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::kParse, "field '" + field + "' " + what, field);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail_field(path, "must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail_field(path.empty() ? key : path + "." + key, "is missing");
  return *it;
}

std::string child(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string require_string(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) fail_field(child(path, key), "must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const std::string& key,
                                           const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) fail_field(child(path, key), "must be a string");
  return it->get<std::string>();
}

int require_int(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number_integer()) fail_field(child(path, key), "must be an integer");
  return v.get<int>();
}

const json& require_array(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_array()) fail_field(child(path, key), "must be an array");
  return v;
}

std::string indexed(const std::string& key, std::size_t i) {
  return key + "[" + std::to_string(i) + "]";
}

std::vector<SentenceUnit> segment(std::string_view text, Origin origin, SentenceId& next_id,
                                  const SentenceSegmenter& segmenter) {
  std::vector<SentenceUnit> units;
  for (auto& sentence : segmenter.split(text)) {
    if (sentence.empty()) continue;
    units.push_back(SentenceUnit{next_id++, std::move(sentence), origin});
  }
  return units;
}

[[noreturn]] void invalid(const std::string& field, const std::string& message) {
  throw Error(ErrorKind::kValidation, message, field);
}

}  // namespace

PaperDocument paper_from_input_json(const json& input, const SentenceSegmenter& segmenter) {
  if (!input.is_object()) fail_field("<root>", "must be an object");
  PaperDocument paper;
  paper.paper_id = require_string(input, "paper_id", "");
  paper.venue = parse_venue(require_string(input, "venue", ""));
  // A missing abstract or introduction reads as empty and fails validation.
  paper.abstract = optional_string(input, "abstract", "").value_or("");
  paper.introduction = optional_string(input, "introduction", "").value_or("");

  SentenceId next_id = 0;
  paper.abstract_sentences = segment(paper.abstract, Origin::kAbstract, next_id, segmenter);
  paper.introduction_sentences =
      segment(paper.introduction, Origin::kIntroduction, next_id, segmenter);

  const json& sections = require_array(input, "sections", "");
  for (std::size_t i = 0; i < sections.size(); ++i) {
    const std::string path = indexed("sections", i);
    Section section;
    section.section_id = require_string(sections[i], "section_id", path);
    section.title = require_string(sections[i], "title", path);
    section.sentences =
        segment(require_string(sections[i], "text", path), Origin::kBody, next_id, segmenter);
    paper.body_sections.push_back(std::move(section));
  }

  const json& visuals = require_array(input, "visuals", "");
  for (std::size_t i = 0; i < visuals.size(); ++i) {
    const std::string path = indexed("visuals", i);
    VisualItem v;
    v.visual_id = require_string(visuals[i], "visual_id", path);
    const std::string kind = require_string(visuals[i], "kind", path);
    if (kind == "figure") {
      v.kind = VisualKind::kFigure;
    } else if (kind == "table") {
      v.kind = VisualKind::kTable;
    } else {
      fail_field(child(path, "kind"), "must be \"figure\" or \"table\"");
    }
    v.caption = require_string(visuals[i], "caption", path);
    v.extracted_text = optional_string(visuals[i], "extracted_text", path);
    v.image_ref = optional_string(visuals[i], "image_ref", path);
    paper.visuals.push_back(std::move(v));
  }

  const json& reviews = require_array(input, "reviews", "");
  for (std::size_t i = 0; i < reviews.size(); ++i) {
    const std::string path = indexed("reviews", i);
    ReviewComment r;
    r.review_id = require_string(reviews[i], "review_id", path);
    r.text = require_string(reviews[i], "text", path);
    r.overall_score = require_int(reviews[i], "overall_score", path);
    paper.reviews.push_back(std::move(r));
  }

  const json& scores = require_array(input, "reviewer_overall_scores", "");
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!scores[i].is_number_integer()) {
      fail_field(indexed("reviewer_overall_scores", i), "must be an integer");
    }
    paper.reviewer_overall_scores.push_back(scores[i].get<int>());
  }

  validate(paper);
  return paper;
}

void validate(const PaperDocument& paper) {
  if (paper.paper_id.empty()) invalid("paper_id", "paper_id empty");
  // IDs end up in whitespace-delimited run and qrels files.
  auto has_space = [](std::string_view id) {
    return std::any_of(id.begin(), id.end(), [](unsigned char c) { return std::isspace(c) != 0; });
  };
  if (has_space(paper.paper_id)) invalid("paper_id", "paper_id contains whitespace");
  if (collapse_whitespace(paper.abstract).empty() || paper.abstract_sentences.empty()) {
    invalid("abstract", "abstract empty");
  }
  if (collapse_whitespace(paper.introduction).empty() || paper.introduction_sentences.empty()) {
    invalid("introduction", "introduction empty");
  }

  SentenceId expected = 0;
  auto check_units = [&](const std::vector<SentenceUnit>& units, Origin origin,
                         const std::string& where) {
    for (const auto& u : units) {
      if (u.id != expected) {
        invalid(where, "sentence IDs not dense at " + where + ": expected " +
                           std::to_string(expected) + ", found " + std::to_string(u.id));
      }
      if (u.text.empty()) invalid(where, "empty sentence in " + where);
      if (u.origin != origin) invalid(where, "sentence origin mismatch in " + where);
      ++expected;
    }
  };
  check_units(paper.abstract_sentences, Origin::kAbstract, "abstract");
  check_units(paper.introduction_sentences, Origin::kIntroduction, "introduction");

  std::set<std::string> seen;
  for (std::size_t i = 0; i < paper.body_sections.size(); ++i) {
    const auto& section = paper.body_sections[i];
    const std::string where = indexed("sections", i);
    if (!seen.insert(section.section_id).second) {
      invalid(where + ".section_id", "duplicate section_id '" + section.section_id + "'");
    }
    check_units(section.sentences, Origin::kBody, where);
  }

  seen.clear();
  for (std::size_t i = 0; i < paper.visuals.size(); ++i) {
    const auto& v = paper.visuals[i];
    const std::string where = indexed("visuals", i);
    if (v.visual_id.empty()) invalid(where + ".visual_id", "visual_id empty");
    if (has_space(v.visual_id)) invalid(where + ".visual_id", "visual_id contains whitespace");
    if (!seen.insert(v.visual_id).second) {
      invalid(where + ".visual_id", "duplicate visual_id '" + v.visual_id + "'");
    }
    if (collapse_whitespace(v.caption).empty()) invalid(where + ".caption", "caption empty");
  }

  seen.clear();
  for (std::size_t i = 0; i < paper.reviews.size(); ++i) {
    const auto& r = paper.reviews[i];
    const std::string where = indexed("reviews", i);
    if (r.review_id.empty()) invalid(where + ".review_id", "review_id empty");
    if (!seen.insert(r.review_id).second) {
      invalid(where + ".review_id", "duplicate review_id '" + r.review_id + "'");
    }
    if (collapse_whitespace(r.text).empty()) invalid(where + ".text", "review text empty");
  }
}

PaperDocument load_paper(const fs::path& path, const SentenceSegmenter& segmenter) {
  if (!fs::exists(path)) {
    throw Error(ErrorKind::kIo, "paper file not found: " + path.string(), path.string());
  }
  return paper_from_input_json(read_json(path), segmenter);
}

std::vector<PaperDocument> load_corpus(const fs::path& dir, const SentenceSegmenter& segmenter) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorKind::kIo, "corpus directory not found: " + dir.string(), dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<PaperDocument> papers;
  std::set<std::string> ids;
  for (const auto& file : files) {
    PaperDocument paper;
    try {
      paper = load_paper(file, segmenter);
    } catch (const Error& e) {
      throw Error(e.kind(), file.filename().string() + ": " + e.what(), e.field());
    }
    if (!ids.insert(paper.paper_id).second) {
      throw Error(ErrorKind::kValidation, "duplicate paper_id '" + paper.paper_id + "'", "paper_id");
    }
    papers.push_back(std::move(paper));
  }
  return papers;
}

std::vector<PaperDocument> filter_unanimous(const std::vector<PaperDocument>& papers) {
  std::vector<PaperDocument> out;
  for (const auto& p : papers) {
    const auto& s = p.reviewer_overall_scores;
    if (s.empty()) continue;
    if (std::adjacent_find(s.begin(), s.end(), std::not_equal_to<>()) != s.end()) continue;
    out.push_back(p);
  }
  return out;
}

}  // namespace rigourate
