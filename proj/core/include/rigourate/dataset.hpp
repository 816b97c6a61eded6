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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rigourate/config.hpp"
#include "rigourate/corpus.hpp"
#include "rigourate/evidence.hpp"
#include "rigourate/ireval.hpp"
#include "rigourate/scoring.hpp"

namespace rigourate {

enum class Split { kTrain, kDev, kTest };

inline constexpr std::array<Split, 3> kAllSplits = {Split::kTrain, Split::kDev, Split::kTest};

std::string_view to_string(Split split);
// Throws Error(kValidation) on anything but train, dev or test.
Split parse_split(std::string_view text);

struct SplitAssignment {
  std::map<std::string, Split> papers;
  std::uint64_t seed = 0;
  SplitRatios ratios;
  std::vector<std::string> warnings;

  // Throws Error(kValidation) for an unassigned paper.
  Split of(std::string_view paper_id) const;
};

// Unbiased index in [0, n) from 64-bit draws by rejection; independent of
// the standard library's distribution implementation.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n);

// Per-split paper targets by largest remainder; every split with a nonzero
// ratio gets at least one paper. Throws Error(kPrecondition) when there are
// fewer papers than nonzero ratios.
std::array<std::size_t, 3> split_targets(std::size_t n_papers, const SplitRatios& ratios);

// Deterministic in (paper ids, ratios, seed); input order does not matter.
// NeurIPS papers only go to dev or test; a train shortfall is reported in
// `warnings`.
SplitAssignment split_corpus(std::span<const PaperDocument> papers, const SplitRatios& ratios,
                             std::uint64_t seed);

nlohmann::json to_json(const SplitAssignment& assignment);
SplitAssignment assignment_from_json(const nlohmann::json& j);

struct SplitCounts {
  std::size_t papers = 0;
  std::size_t claims = 0;
  std::size_t supporting_text = 0;
  std::size_t supporting_image = 0;
  std::size_t not_supporting_text = 0;
  std::size_t not_supporting_image = 0;
  // Train: raw score records. Dev/test: claims with a soft label.
  std::size_t scores = 0;

  std::size_t supporting() const { return supporting_text + supporting_image; }
  std::size_t not_supporting() const { return not_supporting_text + not_supporting_image; }
  std::size_t evidence() const { return supporting() + not_supporting(); }

  SplitCounts& operator+=(const SplitCounts& o);
  friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

struct DatasetStats {
  std::array<SplitCounts, 3> splits{};

  const SplitCounts& at(Split s) const { return splits[static_cast<std::size_t>(s)]; }
  SplitCounts total() const;
};

// Claims, evidence and scores inherit their paper's split. Throws
// Error(kValidation) for a record whose paper or claim is unknown.
DatasetStats dataset_stats(const SplitAssignment& assignment, std::span<const Claim> claims,
                           std::span<const ClaimEvidenceSet> evidence, std::span<const ScoreRecord> scores);

nlohmann::json to_json(const DatasetStats& stats);
DatasetStats dataset_stats_from_json(const nlohmann::json& j);

// Text shown for an evidence item: passage sentences joined by spaces, or a
// visual's caption followed by its extracted text.
std::string evidence_document(const EvidenceItem& item, const PaperDocument& paper);

using PaperIndex = std::map<std::string, const PaperDocument*>;
PaperIndex index_papers(std::span<const PaperDocument> papers);

// Fields in order: claim_id, evidence_id, system, instruction, claim,
// document, label. Supporting items first, then at most `negative_cap`
// non-supporting items in stored order.
std::vector<nlohmann::ordered_json> retrieval_pairs(const ClaimEvidenceSet& set, const PaperDocument& paper,
                                                    std::optional<std::size_t> negative_cap = {});

std::vector<nlohmann::ordered_json> export_retrieval_pairs(Split split, const SplitAssignment& assignment,
                                                           std::span<const ClaimEvidenceSet> evidence,
                                                           const PaperIndex& papers,
                                                           std::optional<std::size_t> negative_cap = {});

// Binary relevance over each claim's full stored pool.
Qrels export_qrels(Split split, const SplitAssignment& assignment, std::span<const ClaimEvidenceSet> evidence);

// "<score>0.300</score>".
std::string score_tag(double score);

// Fields in order: claim_id, [annotator_id, context,] system, user, images,
// target. Train: one row per score record with the justification after the
// tag. Dev/test: one row per claim with its soft label.
std::vector<nlohmann::ordered_json> export_scorer_records(Split split, const SplitAssignment& assignment,
                                                          std::span<const ClaimEvidenceSet> evidence,
                                                          const PaperIndex& papers,
                                                          std::span<const ScoreRecord> scores,
                                                          const BinEdges& edges = kDefaultBinEdges);

std::string to_jsonl(const std::vector<nlohmann::ordered_json>& rows);

}  // namespace rigourate
