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

#include "rigourate/error.hpp"
#include "rigourate/prompts.hpp"

using namespace rigourate;

TEST_CASE("own-statement prompt carries all three bindings verbatim") {
  const Bindings b = {{"ABSTRACT", "ABS-TEXT-1"}, {"INTRODUCTION", "INTRO-TEXT-2"}, {"SENTENCE", "SENT-TEXT-3"}};
  const std::string out = render_prompt(templates::own_statement(), b);
  CHECK(out.find("ABS-TEXT-1") != std::string::npos);
  CHECK(out.find("INTRO-TEXT-2") != std::string::npos);
  CHECK(out.find("SENT-TEXT-3") != std::string::npos);
  CHECK(out.find("<Label>{your_label}</Label>") != std::string::npos);
}

TEST_CASE("a template without placeholders renders unchanged") {
  const PromptTemplate t{"plain", "Nothing to fill {lowercase} here.", ExpectedTag::kLabel};
  CHECK(placeholders(t).empty());
  CHECK(render_prompt(t, {}) == t.body);
}

TEST_CASE("a missing binding names the placeholder") {
  try {
    render_prompt(templates::text_evidence(), {{"CLAIM", "c"}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kPrecondition);
    CHECK(e.field() == "NUMBERED SENTENCES");
  }
}

TEST_CASE("placeholders per template") {
  CHECK(placeholders(templates::own_statement()) ==
        std::vector<std::string>{"ABSTRACT", "INTRODUCTION", "SENTENCE"});
  CHECK(placeholders(templates::text_evidence()) == std::vector<std::string>{"CLAIM", "NUMBERED SENTENCES"});
  CHECK(placeholders(templates::overstatement()) == std::vector<std::string>{"CLAIM", "REVIEW", "EVIDENCE"});
  CHECK(templates::by_id("overstatement").template_id == "overstatement");
  CHECK_THROWS_AS(templates::by_id("nope"), Error);
}

TEST_CASE("paper-only scoring prompt drops the whole review block") {
  const std::string paper_only =
      render_prompt(templates::overstatement(), {{"CLAIM", "CLAIM-X"}, {"EVIDENCE", "EVIDENCE-Y"}});
  CHECK(paper_only.find("review comment to be evaluated") == std::string::npos);
  CHECK(paper_only.find("The claim to be assessed is:\n\nCLAIM-X\n\nThe evidence to be evaluated is:\n\nEVIDENCE-Y") !=
        std::string::npos);
  CHECK(paper_only.find("[[") == std::string::npos);

  const std::string with_review = render_prompt(
      templates::overstatement(), {{"CLAIM", "CLAIM-X"}, {"EVIDENCE", "EVIDENCE-Y"}, {"REVIEW", "REVIEW-Z"}});
  CHECK(with_review.find("CLAIM-X\n\nThe review comment to be evaluated is:\n\nREVIEW-Z\n\nThe evidence to be "
                         "evaluated is:\n\nEVIDENCE-Y") != std::string::npos);
  CHECK(with_review.find("<score>{score}</score>") != std::string::npos);
}

TEST_CASE("reformat reminders mention the expected tag") {
  CHECK(std::string(reformat_reminder(ExpectedTag::kLabel)).find("<Label>") != std::string::npos);
  CHECK(std::string(reformat_reminder(ExpectedTag::kScoreAndJustification)).find("<score>") != std::string::npos);
}
