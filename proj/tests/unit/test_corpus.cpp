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

#include <doctest.h>

#include <set>

#include <nlohmann/json.hpp>

#include "fixture_run.hpp"
#include "rigourate/corpus.hpp"
#include "rigourate/error.hpp"
#include "rigourate/jsonl.hpp"

using namespace rigourate;
using nlohmann::json;

namespace {

json minimal_paper() {
  return json{{"paper_id", "x1"},
              {"venue", "ICLR"},
              {"abstract", "We do a thing. It works."},
              {"introduction", "Things matter."},
              {"sections", json::array({{{"section_id", "s1"}, {"title", "Body"}, {"text", "One. Two."}}})},
              {"visuals", json::array()},
              {"reviews", json::array({{{"review_id", "r1"}, {"text", "Fine."}, {"overall_score", 6}}})},
              {"reviewer_overall_scores", json::array({6})}};
}

ErrorKind kind_of(const json& j) {
  try {
    paper_from_input_json(j);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kIo;
}

}  // namespace

TEST_CASE("fixture paper loads with dense global IDs") {
  const auto paper = load_paper(testing_support::fixtures_dir() / "corpus" / "p1.json");
  CHECK(paper.paper_id == "p1");
  CHECK(paper.venue == Venue::kIclr);
  const std::size_t n = paper.sentence_count();
  CHECK(n == 21);
  std::set<std::string> texts;
  for (SentenceId id = 0; id < n; ++id) {
    const SentenceUnit* s = paper.find_sentence(id);
    REQUIRE(s != nullptr);
    CHECK(s->id == id);
    texts.insert(s->text);
  }
  CHECK(paper.find_sentence(static_cast<SentenceId>(n)) == nullptr);
  CHECK(texts.size() == n);
}

TEST_CASE("three sections of 4, 5 and 6 sentences give 15 body units") {
  const auto paper = load_paper(testing_support::fixtures_dir() / "corpus" / "p1.json");
  REQUIRE(paper.body_sections.size() == 3);
  CHECK(paper.body_sections[0].sentences.size() == 4);
  CHECK(paper.body_sections[1].sentences.size() == 5);
  CHECK(paper.body_sections[2].sentences.size() == 6);
  const auto body = paper.body_sentences();
  CHECK(body.size() == 15);
  CHECK(body.front().id == 6);
  CHECK(body.back().id == 20);
  CHECK(paper.body_sections[1].sentences.front().id == 10);
  for (const auto& s : body) CHECK(s.origin == Origin::kBody);
  const auto candidates = paper.claim_candidates();
  CHECK(candidates.size() == 6);
  for (const auto& s : candidates) CHECK(s.origin != Origin::kBody);
}

TEST_CASE("missing abstract is a validation error") {
  json j = minimal_paper();
  j.erase("abstract");
  try {
    paper_from_input_json(j);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kValidation);
    CHECK(std::string(e.what()) == "abstract empty");
    CHECK(e.field() == "abstract");
  }
}

TEST_CASE("malformed fields name the offending field") {
  json j = minimal_paper();
  j["sections"][0].erase("text");
  try {
    paper_from_input_json(j);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kParse);
    CHECK(e.field() == "sections[0].text");
  }
  j = minimal_paper();
  j["reviewer_overall_scores"] = json::array({"six"});
  CHECK(kind_of(j) == ErrorKind::kParse);
  j = minimal_paper();
  j["visuals"] = json::array({{{"visual_id", "f"}, {"kind", "chart"}, {"caption", "c"}}});
  CHECK(kind_of(j) == ErrorKind::kParse);
}

TEST_CASE("duplicate IDs are validation errors") {
  json j = minimal_paper();
  j["sections"].push_back({{"section_id", "s1"}, {"title", "Again"}, {"text", "Three."}});
  CHECK(kind_of(j) == ErrorKind::kValidation);
  j = minimal_paper();
  j["reviews"].push_back({{"review_id", "r1"}, {"text", "Again."}, {"overall_score", 6}});
  CHECK(kind_of(j) == ErrorKind::kValidation);
  j = minimal_paper();
  j["visuals"] = json::array({{{"visual_id", "f"}, {"kind", "figure"}, {"caption", "c"}},
                              {{"visual_id", "f"}, {"kind", "table"}, {"caption", "d"}}});
  CHECK(kind_of(j) == ErrorKind::kValidation);
  j = minimal_paper();
  j["paper_id"] = "has space";
  CHECK(kind_of(j) == ErrorKind::kValidation);
}

TEST_CASE("a missing file is an io error") {
  CHECK_THROWS_AS(load_paper("/nonexistent/paper.json"), Error);
}

TEST_CASE("filter_unanimous keeps only identical, non-empty score lists") {
  auto with_scores = [](std::string id, std::vector<int> scores) {
    PaperDocument p;
    p.paper_id = std::move(id);
    p.reviewer_overall_scores = std::move(scores);
    return p;
  };
  const std::vector<PaperDocument> papers = {with_scores("a", {6, 6, 6}), with_scores("b", {6, 5, 6}),
                                             with_scores("c", {}), with_scores("d", {3})};
  const auto kept = filter_unanimous(papers);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].paper_id == "a");
  CHECK(kept[1].paper_id == "d");
  const auto again = filter_unanimous(kept);
  REQUIRE(again.size() == 2);
  CHECK(again[0].paper_id == "a");
}

TEST_CASE("load_corpus reads every paper in file-name order") {
  const auto papers = load_corpus(testing_support::fixtures_dir() / "corpus");
  REQUIRE(papers.size() == 4);
  CHECK(papers[0].paper_id == "p1");
  CHECK(papers[3].paper_id == "p4");
  CHECK(filter_unanimous(papers).size() == 3);
  CHECK(papers[2].venue == Venue::kNeurips);
}
