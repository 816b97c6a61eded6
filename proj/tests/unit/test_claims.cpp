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

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "panels.hpp"
#include "rigourate/claims.hpp"
#include "rigourate/error.hpp"

using namespace rigourate;
using testing_support::make_panel;
using testing_support::small_paper;

namespace {

const std::string kOrig(kOriginalStatement);
const std::string kNot(kNotOriginalStatement);

std::string label(const std::string& text) { return "reasoning\n<Label>" + text + "</Label>"; }

}  // namespace

TEST_CASE("majority vote") {
  std::vector<std::string> v(5, kOrig);
  v.insert(v.end(), 3, kNot);
  CHECK(majority_vote(v, kNot) == kOrig);
  std::vector<std::string> tie(4, kOrig);
  tie.insert(tie.end(), 4, kNot);
  CHECK(majority_vote(tie, kNot) == kNot);
  CHECK(majority_vote(std::vector<std::string>{kOrig}, kNot) == kOrig);
  CHECK_THROWS_AS(majority_vote(std::vector<std::string>{}, kNot), Error);
  CHECK(majority_vote(std::vector<std::string>{"a", "b", "b", "c"}, "tie") == "b");
  CHECK(majority_vote(std::vector<std::string>{"a", "b", "c"}, "tie") == "tie");
}

TEST_CASE("majority vote is order independent and matches the plurality oracle") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> labels = {"x", "y", "z"};
  for (int t = 0; t < 2000; ++t) {
    std::vector<std::string> v(1 + rng() % 9);
    for (auto& s : v) s = labels[rng() % labels.size()];
    const std::string expected = oracle::plurality(v, "tie");
    CHECK(majority_vote(v, "tie") == expected);
    std::shuffle(v.begin(), v.end(), rng);
    CHECK(majority_vote(v, "tie") == expected);
  }
}

TEST_CASE("classify_sentence collects one vote per ok annotator") {
  const auto paper = small_paper();
  auto panel = make_panel(3, 5, [](const std::string& id, const ChatRequest&) {
    return label(id == "t0" || id == "v0" || id == "v1" ? kNot : kOrig);
  });
  const auto votes = classify_sentence(paper, paper.abstract_sentences[1], panel);
  CHECK(votes.votes.size() == 8);
  CHECK(std::count_if(votes.votes.begin(), votes.votes.end(), [](auto& kv) { return kv.second == kOrig; }) == 5);
  CHECK(votes.audit.empty());
  CHECK(majority_vote(votes.votes, kNot) == kOrig);
}

TEST_CASE("one transport failure shrinks the vote pool") {
  const auto paper = small_paper();
  auto panel = make_panel(3, 5, [](const std::string& id, const ChatRequest&) -> std::string {
    if (id == "v2") throw Error(ErrorKind::kTransport, "down");
    return label(kOrig);
  });
  const auto votes = classify_sentence(paper, paper.abstract_sentences[0], panel, 4);
  CHECK(votes.votes.size() == 7);
  CHECK_FALSE(votes.votes.contains("v2"));
  REQUIRE(votes.audit.size() >= 1);
  CHECK(votes.audit[0].annotator_id == "v2");
}

TEST_CASE("body sentences are rejected") {
  const auto paper = small_paper();
  auto panel = make_panel(1, 0, [](const std::string&, const ChatRequest&) { return label(kOrig); });
  CHECK_THROWS_AS(classify_sentence(paper, paper.body_sentences()[0], panel), Error);
}

TEST_CASE("extract_claims keeps original statements in document order") {
  const auto paper = small_paper();
  auto panel = make_panel(3, 5, [](const std::string&, const ChatRequest& r) {
    const std::string& s = r.bindings.at("SENTENCE");
    return label(s.find("ours") != std::string::npos ? kOrig : kNot);
  });
  const auto out = extract_claims(paper, panel);
  REQUIRE(out.claims.size() == 2);
  CHECK(out.claims[0].sentence.id == 1);
  CHECK(out.claims[1].sentence.id == 2);
  CHECK(out.claims[0].claim_id == make_claim_id("sp", 1));
  CHECK(out.labelled.size() == 4);
  for (const auto& c : out.claims) {
    CHECK(c.consensus_label == kOrig);
    CHECK(c.paper_id == "sp");
    CHECK(c.sentence.origin != Origin::kBody);
    CHECK(majority_vote(c.votes, kNot) == c.consensus_label);
  }
}

TEST_CASE("no original statements gives no claims") {
  const auto paper = small_paper();
  auto panel = make_panel(2, 1, [](const std::string&, const ChatRequest&) { return label(kNot); });
  CHECK(extract_claims(paper, panel).claims.empty());
}

TEST_CASE("a sentence every annotator failed on is skipped with an audit entry") {
  const auto paper = small_paper();
  auto panel = make_panel(2, 0, [](const std::string&, const ChatRequest& r) -> std::string {
    if (r.bindings.at("SENTENCE").find("One") != std::string::npos) return "gibberish";
    return label(kOrig);
  });
  const auto out = extract_claims(paper, panel);
  CHECK(out.labelled.size() == 3);
  CHECK(std::none_of(out.claims.begin(), out.claims.end(), [](const Claim& c) { return c.sentence.id == 1; }));
  CHECK(std::any_of(out.audit.begin(), out.audit.end(),
                    [](const AuditEntry& a) { return a.subject == "sp:1" && a.status == "skipped"; }));
}
