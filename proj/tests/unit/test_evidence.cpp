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
#include <set>

#include "fixture_run.hpp"
#include "oracles.hpp"
#include "panels.hpp"
#include "rigourate/error.hpp"
#include "rigourate/evidence.hpp"

using namespace rigourate;
using testing_support::make_panel;
using testing_support::small_paper;

namespace {

// Sentences with IDs 10..10+n-1 whose numbered lines are exactly 40 chars.
std::vector<SentenceUnit> uniform_body(int n) {
  std::vector<SentenceUnit> body;
  for (int i = 0; i < n; ++i) {
    const SentenceId id = static_cast<SentenceId>(10 + i);
    body.push_back({id, std::string(34, 'a') + ".", Origin::kBody});
  }
  return body;
}

Claim claim_of(const PaperDocument& paper, SentenceId id) {
  Claim c;
  c.paper_id = paper.paper_id;
  c.sentence = *paper.find_sentence(id);
  c.claim_id = make_claim_id(paper.paper_id, id);
  c.consensus_label = std::string(kOriginalStatement);
  return c;
}

std::string numbers(const std::vector<SentenceId>& ids) {
  std::string s = "<Label>\n";
  for (auto id : ids) s += std::to_string(id) + "\n";
  return s + "</Label>";
}

ContextSelections selections(std::vector<SentenceId> ids, Selections sel) {
  ContextSelections c;
  c.claim_id = "c";
  c.sentence_ids = std::move(ids);
  c.selections = std::move(sel);
  return c;
}

std::vector<SentenceId> range(SentenceId lo, SentenceId hi) {
  std::vector<SentenceId> v;
  for (SentenceId i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

}  // namespace

TEST_CASE("token estimator is ceil(chars / 4) over code points") {
  CHECK(estimate_tokens("") == 0);
  CHECK(estimate_tokens("abcd") == 1);
  CHECK(estimate_tokens("abcde") == 2);
  CHECK(estimate_tokens("\xc3\xa9\xc3\xa9\xc3\xa9\xc3\xa9") == 1);
  CHECK(numbered_line({7, "Text.", Origin::kBody}) == "[7] Text.");
}

TEST_CASE("generous budget gives one chunk") {
  const auto body = uniform_body(30);
  const auto chunks = build_contexts(body, "c", 100000);
  REQUIRE(chunks.size() == 1);
  CHECK(chunks[0].sentence_ids.size() == 30);
  CHECK(chunks[0].rendered_numbered_text.rfind("[10] ", 0) == 0);
}

TEST_CASE("budget forcing ten sentences per chunk gives three chunks") {
  const auto body = uniform_body(30);
  // Ten 40-char lines joined by newlines: 409 chars, 103 tokens.
  const auto chunks = build_contexts(body, "c", 103);
  REQUIRE(chunks.size() == 3);
  std::set<SentenceId> seen;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    CHECK(chunks[i].chunk_index == i);
    CHECK(chunks[i].sentence_ids.size() == 10);
    CHECK(chunks[i].token_estimate <= 103);
    CHECK(chunks[i].token_estimate == estimate_tokens(chunks[i].rendered_numbered_text));
    for (auto id : chunks[i].sentence_ids) CHECK(seen.insert(id).second);
  }
  CHECK(seen.size() == 30);
}

TEST_CASE("empty body gives no chunks; oversized sentence gets its own flagged chunk") {
  CHECK(build_contexts(std::vector<SentenceUnit>{}, "c", 100).empty());
  std::vector<SentenceUnit> body = {{0, "short.", Origin::kBody},
                                    {1, std::string(400, 'x'), Origin::kBody},
                                    {2, "short again.", Origin::kBody}};
  const auto chunks = build_contexts(body, "c", 64);
  REQUIRE(chunks.size() == 3);
  CHECK_FALSE(chunks[0].oversized);
  CHECK(chunks[1].oversized);
  CHECK(chunks[1].sentence_ids == std::vector<SentenceId>{1});
  CHECK_FALSE(chunks[2].oversized);
}

TEST_CASE("rendered numbering uses global sentence IDs") {
  const auto paper = small_paper(12);
  const auto claim = claim_of(paper, 1);
  const auto chunks = build_contexts(paper, claim, 1000);
  REQUIRE(chunks.size() == 1);
  CHECK(chunks[0].sentence_ids.front() == 4);
  CHECK(chunks[0].rendered_numbered_text.find("[4] Body sentence number 0 holds.") != std::string::npos);
}

TEST_CASE("every annotator selecting {4,5,9}") {
  const auto paper = small_paper(12);
  const auto claim = claim_of(paper, 1);
  const auto ctx = build_contexts(paper, claim, 1000).at(0);
  auto panel = make_panel(3, 5, [](const std::string&, const ChatRequest&) { return numbers({4, 5, 9}); });
  std::vector<AuditEntry> audit;
  const auto sel = annotate_text_evidence(claim, ctx, panel, audit, 3);
  CHECK(sel.selections.size() == 8);
  for (const auto& [id, picked] : sel.selections) CHECK(picked == std::vector<SentenceId>{4, 5, 9});
  CHECK(audit.empty());

  const std::vector<ContextSelections> all = {sel};
  const auto items = aggregate_and_merge(claim.claim_id, all, {});
  std::vector<std::vector<SentenceId>> passages;
  for (const auto& it : items) {
    if (it.supporting) passages.push_back(it.sentence_ids);
  }
  CHECK(passages == std::vector<std::vector<SentenceId>>{{4, 5}, {9}});
}

TEST_CASE("empty selections and parse failures") {
  const auto paper = small_paper(12);
  const auto claim = claim_of(paper, 1);
  const auto ctx = build_contexts(paper, claim, 1000).at(0);
  auto panel = make_panel(2, 1, [](const std::string& id, const ChatRequest&) {
    return id == "v0" ? std::string("cannot say") : std::string("<Label></Label>");
  });
  std::vector<AuditEntry> audit;
  const auto sel = annotate_text_evidence(claim, ctx, panel, audit);
  CHECK(sel.selections.size() == 2);
  for (const auto& [id, picked] : sel.selections) CHECK(picked.empty());
  CHECK_FALSE(sel.selections.contains("v0"));
  CHECK_FALSE(audit.empty());
}

TEST_CASE("visual votes come from vision annotators only") {
  const auto paper = small_paper();
  const auto claim = claim_of(paper, 1);
  const auto image_root = testing_support::fixtures_dir() / "corpus";
  auto relevant_if = [](std::set<std::string> yes) {
    return [yes](const std::string& id, const ChatRequest&) {
      return std::string(yes.contains(id) ? "<Label>relevant</Label>" : "<Label>not_relevant</Label>");
    };
  };
  std::vector<AuditEntry> audit;
  auto panel = make_panel(3, 5, relevant_if({"v0", "v1", "v2"}));
  auto va = annotate_visual_evidence(claim, paper.visuals[0], vision_subset(panel), image_root, audit);
  CHECK(va.votes.size() == 5);
  std::vector<VisualAnnotation> visuals = {va};
  auto items = aggregate_and_merge(claim.claim_id, {}, visuals);
  REQUIRE(items.size() == 1);
  CHECK(items[0].supporting);
  CHECK(items[0].kind == EvidenceKind::kFigure);

  panel = make_panel(0, 5, relevant_if({"v0", "v1"}));
  va = annotate_visual_evidence(claim, paper.visuals[0], panel, image_root, audit);
  visuals = {va};
  items = aggregate_and_merge(claim.claim_id, {}, visuals);
  CHECK_FALSE(items[0].supporting);

  CHECK_THROWS_AS(annotate_visual_evidence(claim, paper.visuals[0], make_panel(2, 0, relevant_if({})), image_root, audit),
                  Error);
}

TEST_CASE("visual without an image file is judged from caption and extracted text") {
  const auto paper = small_paper();
  const auto claim = claim_of(paper, 1);
  std::vector<std::size_t> image_counts;
  std::string prompt;
  auto panel = make_panel(0, 3, [&](const std::string&, const ChatRequest& r) {
    image_counts.push_back(r.images.size());
    prompt = r.user_prompt;
    return std::string("<Label>relevant</Label>");
  });
  std::vector<AuditEntry> audit;
  const auto va = annotate_visual_evidence(claim, paper.visuals[1], panel, testing_support::fixtures_dir(), audit);
  CHECK(va.votes.size() == 3);
  CHECK(std::all_of(image_counts.begin(), image_counts.end(), [](std::size_t n) { return n == 0; }));
  CHECK(prompt.find("Table 1: numbers.") != std::string::npos);
  CHECK(va.kind == VisualKind::kTable);
}

TEST_CASE("merging consecutive supporting sentences") {
  const auto ids = range(0, 12);
  Selections sel;
  for (const char* a : {"a", "b", "c"}) sel[a] = {3, 4, 5, 9};
  const std::vector<ContextSelections> ctx = {selections(ids, sel)};
  const auto items = aggregate_and_merge("c", ctx, {});
  std::vector<std::vector<SentenceId>> supporting;
  for (const auto& it : items) {
    if (it.supporting) supporting.push_back(it.sentence_ids);
    CHECK(recompute_supporting(it) == it.supporting);
  }
  CHECK(supporting == std::vector<std::vector<SentenceId>>{{3, 4, 5}, {9}});
  CHECK(items[0].evidence_id != items[1].evidence_id);

  Selections none = {{"a", {}}, {"b", {}}};
  const std::vector<ContextSelections> empty_ctx = {selections(ids, none)};
  CHECK(aggregate_and_merge("c", empty_ctx, {}).empty());
}

TEST_CASE("strict majority: 4 of 8 is not supporting") {
  Selections sel;
  for (int i = 0; i < 8; ++i) sel["a" + std::to_string(i)] = i < 4 ? std::vector<SentenceId>{2} : std::vector<SentenceId>{};
  const std::vector<ContextSelections> ctx = {selections(range(0, 4), sel)};
  const auto items = aggregate_and_merge("c", ctx, {});
  REQUIRE(items.size() == 1);
  CHECK_FALSE(items[0].supporting);
  CHECK(items[0].sentence_ids == std::vector<SentenceId>{2});
  CHECK(strict_majority(5, 8));
  CHECK_FALSE(strict_majority(4, 8));
  CHECK_FALSE(strict_majority(0, 0));
}

TEST_CASE("negative policies") {
  Selections sel = {{"a", {1, 2}}, {"b", {1}}, {"c", {5}}};
  const std::vector<ContextSelections> ctx = {selections(range(0, 6), sel)};
  auto items = aggregate_and_merge("c", ctx, {});
  // Sentence 1 has two of three votes; 2 and 5 have one each.
  std::vector<std::vector<SentenceId>> neg, pos;
  for (const auto& it : items) (it.supporting ? pos : neg).push_back(it.sentence_ids);
  CHECK(pos == std::vector<std::vector<SentenceId>>{{1}});
  CHECK(neg == std::vector<std::vector<SentenceId>>{{2}, {5}});

  MergeOptions exhaustive;
  exhaustive.negatives = NegativePolicy::kExhaustive;
  items = aggregate_and_merge("c", ctx, {}, exhaustive);
  neg.clear();
  for (const auto& it : items) {
    if (!it.supporting) neg.push_back(it.sentence_ids);
  }
  CHECK(neg == std::vector<std::vector<SentenceId>>{{0}, {2, 3, 4, 5, 6}});
}

TEST_CASE("gap-tolerant merging") {
  Selections sel = {{"a", {1, 3}}, {"b", {1, 3}}};
  const std::vector<ContextSelections> ctx = {selections(range(0, 5), sel)};
  MergeOptions gap;
  gap.max_gap = 1;
  const auto items = aggregate_and_merge("c", ctx, {}, gap);
  REQUIRE_FALSE(items.empty());
  CHECK(items[0].supporting);
  CHECK(items[0].sentence_ids == std::vector<SentenceId>{1, 2, 3});
  CHECK(recompute_supporting(items[0], 1));
  CHECK_FALSE(recompute_supporting(items[0], 0));
}

TEST_CASE("property: merge equals brute-force runs; adding a vote never removes support") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    const SentenceId n = 1 + rng() % 25;
    const int voters = 1 + static_cast<int>(rng() % 6);
    Selections sel;
    for (int a = 0; a < voters; ++a) {
      std::vector<SentenceId> picked;
      for (SentenceId i = 0; i < n; ++i) {
        if (rng() % 2) picked.push_back(i);
      }
      sel["a" + std::to_string(a)] = picked;
    }
    const std::vector<ContextSelections> ctx = {selections(range(0, n - 1), sel)};
    const auto items = aggregate_and_merge("c", ctx, {});
    std::set<unsigned> marked;
    for (SentenceId i = 0; i < n; ++i) {
      int yes = 0;
      for (const auto& [a, p] : sel) yes += std::binary_search(p.begin(), p.end(), i);
      if (2 * yes > voters) marked.insert(i);
    }
    std::vector<std::vector<unsigned>> got;
    for (const auto& it : items) {
      if (it.supporting) got.emplace_back(it.sentence_ids.begin(), it.sentence_ids.end());
    }
    REQUIRE(got == oracle::maximal_runs(marked));

    // Add one vote for a random sentence from an annotator who skipped it.
    const SentenceId target = rng() % n;
    for (auto& [a, p] : sel) {
      if (!std::binary_search(p.begin(), p.end(), target)) {
        p.insert(std::lower_bound(p.begin(), p.end(), target), target);
        break;
      }
    }
    const std::vector<ContextSelections> ctx2 = {selections(range(0, n - 1), sel)};
    std::set<SentenceId> before, after;
    for (const auto& it : items) {
      if (it.supporting) before.insert(it.sentence_ids.begin(), it.sentence_ids.end());
    }
    for (const auto& it : aggregate_and_merge("c", ctx2, {})) {
      if (it.supporting) after.insert(it.sentence_ids.begin(), it.sentence_ids.end());
    }
    REQUIRE(std::includes(after.begin(), after.end(), before.begin(), before.end()));
  }
}

TEST_CASE("evidence set partitions items by consensus") {
  Selections sel = {{"a", {1}}, {"b", {1}}, {"c", {3}}};
  const std::vector<ContextSelections> ctx = {selections(range(0, 4), sel)};
  auto items = aggregate_and_merge("c", ctx, {});
  const auto set = make_evidence_set(Claim{}, items);
  CHECK(set.items.size() == 1);
  CHECK(set.non_supporting_pool.size() == 1);
  CHECK(set.items.size() + set.non_supporting_pool.size() == items.size());
}

TEST_CASE("consecutive_runs") {
  const std::vector<SentenceId> ids = {3, 4, 5, 9, 11, 12};
  CHECK(consecutive_runs(ids) == std::vector<std::vector<SentenceId>>{{3, 4, 5}, {9}, {11, 12}});
  CHECK(consecutive_runs(std::vector<SentenceId>{}).empty());
}
