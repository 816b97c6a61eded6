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

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rigourate/annotator.hpp"
#include "rigourate/audit.hpp"
#include "rigourate/claims.hpp"
#include "rigourate/corpus.hpp"

namespace rigourate {

inline constexpr std::size_t kDefaultTokenBudget = 1000;

// ceil(code points / 4).
std::size_t estimate_tokens(std::string_view text);

// "[<id>] <text>", the line format annotators see and cite back by number.
std::string numbered_line(const SentenceUnit& sentence);

struct EvidenceContext {
  std::string claim_id;
  std::size_t chunk_index = 0;
  std::vector<SentenceId> sentence_ids;
  std::string rendered_numbered_text;
  std::size_t token_estimate = 0;
  // A single sentence longer than the budget gets a chunk of its own.
  bool oversized = false;
};

// Greedy in-order packing of body sentences into numbered chunks whose token
// estimate stays within `budget`. Chunk boundaries do not depend on the claim,
// so prompts for different claims of one paper share their sentence blocks.
std::vector<EvidenceContext> build_contexts(std::span<const SentenceUnit> body,
                                            std::string_view claim_id, std::size_t budget);
std::vector<EvidenceContext> build_contexts(const PaperDocument& paper, const Claim& claim,
                                            std::size_t budget = kDefaultTokenBudget);

// annotator_id -> selected sentence IDs, for annotators whose answer parsed.
using Selections = std::map<std::string, std::vector<SentenceId>>;

struct ContextSelections {
  std::string claim_id;
  std::size_t chunk_index = 0;
  std::vector<SentenceId> sentence_ids;
  Selections selections;
};

ContextSelections annotate_text_evidence(const Claim& claim, const EvidenceContext& context,
                                         const Panel& panel, std::vector<AuditEntry>& audit,
                                         std::size_t parallelism = 1);

// annotator_id -> relevant?
using VisualVotes = std::map<std::string, bool>;

struct VisualAnnotation {
  std::string claim_id;
  std::string visual_id;
  VisualKind kind = VisualKind::kFigure;
  VisualVotes votes;
};

// Only vision annotators are consulted. A visual without image_ref is judged
// from caption and extracted text alone; an image_ref whose file is missing
// is a modality error and every annotator is skipped for that visual.
VisualAnnotation annotate_visual_evidence(const Claim& claim, const VisualItem& visual,
                                          const Panel& vision_panel,
                                          const std::filesystem::path& image_root,
                                          std::vector<AuditEntry>& audit,
                                          std::size_t parallelism = 1);

enum class EvidenceKind { kTextPassage, kFigure, kTable };

std::string_view to_string(EvidenceKind kind);
EvidenceKind evidence_kind(VisualKind kind);

struct EvidenceItem {
  std::string evidence_id;
  std::string claim_id;
  EvidenceKind kind = EvidenceKind::kTextPassage;
  // Text passages: a strictly consecutive run.
  std::vector<SentenceId> sentence_ids;
  // Visual items only.
  std::string visual_id;
  // Text: annotator selected any sentence of the passage. Visual: relevant.
  std::map<std::string, bool> votes;
  // Text only, parallel to sentence_ids: the ok voters of the sentence's
  // context and whether each selected it.
  std::vector<std::map<std::string, bool>> sentence_votes;
  bool supporting = false;
};

enum class NegativePolicy {
  // Runs of sentences selected by at least one annotator but no majority.
  kCandidates,
  // Runs of every non-supporting body sentence.
  kExhaustive,
};

struct MergeOptions {
  // Supporting runs separated by at most this many sentences are joined
  // (the gap sentences become part of the passage). 0 = strictly adjacent.
  std::size_t max_gap = 0;
  NegativePolicy negatives = NegativePolicy::kCandidates;
};

// Strict majority over the annotators that answered.
bool strict_majority(std::size_t yes, std::size_t voters);

// Supporting sentences are those picked by a strict majority of their
// context's ok voters; maximal runs become passages. Visuals get one item
// each. Supporting and non-supporting items are returned together: text in
// document order, then visuals in the order given.
std::vector<EvidenceItem> aggregate_and_merge(std::string_view claim_id,
                                              std::span<const ContextSelections> contexts,
                                              std::span<const VisualAnnotation> visuals,
                                              const MergeOptions& options = {});

// Re-derives `supporting` from the stored votes.
bool recompute_supporting(const EvidenceItem& item, std::size_t max_gap = 0);

// Maximal runs of consecutive IDs in a sorted, de-duplicated list.
std::vector<std::vector<SentenceId>> consecutive_runs(std::span<const SentenceId> sorted_ids);

struct ClaimEvidenceSet {
  Claim claim;
  std::vector<EvidenceItem> items;
  std::vector<EvidenceItem> non_supporting_pool;
};

ClaimEvidenceSet make_evidence_set(Claim claim, std::vector<EvidenceItem> all_items);

}  // namespace rigourate
