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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rigourate/annotator.hpp"
#include "rigourate/audit.hpp"
#include "rigourate/corpus.hpp"
#include "rigourate/evidence.hpp"

namespace rigourate {

// Context of a score: paper only (no review) or one specific review.
struct ScoreContext {
  std::optional<std::string> review_id;

  bool paper_only() const { return !review_id.has_value(); }
  // "paper_only" or "review:<id>".
  std::string label() const;
  static ScoreContext parse(std::string_view label);
};

struct ScoreRecord {
  std::string claim_id;
  std::string annotator_id;
  ScoreContext context;
  double score = 0.0;
  std::string justification;
};

inline constexpr std::string_view kMissingJustification = "(none)";

// Evidence block for the scoring prompt: text passages in document order,
// then visuals in document order, each visual as caption plus extracted text.
std::string render_evidence(const ClaimEvidenceSet& set, const PaperDocument& paper);

// Image files of the supporting visuals that exist on disk.
std::vector<std::filesystem::path> evidence_images(const ClaimEvidenceSet& set,
                                                   const PaperDocument& paper,
                                                   const std::filesystem::path& image_root);

// Throws Error(kPrecondition) when the context names a review the paper does
// not have. Returns nullopt (and records the failure) when the annotator
// never produced a readable score.
std::optional<ScoreRecord> score_claim(const ClaimEvidenceSet& set, const PaperDocument& paper,
                                       const Annotator& annotator, const ScoreContext& context,
                                       const std::filesystem::path& image_root,
                                       std::vector<AuditEntry>& audit);

// Every annotator under the paper-only context and once per review. Records
// come back ordered by annotator, then context (paper-only first, reviews in
// paper order).
std::vector<ScoreRecord> score_all(const ClaimEvidenceSet& set, const PaperDocument& paper,
                                   const Panel& panel, const std::filesystem::path& image_root,
                                   std::vector<AuditEntry>& audit, std::size_t parallelism = 1);

using BinEdges = std::array<double, 4>;
inline constexpr BinEdges kDefaultBinEdges = {0.2, 0.4, 0.6, 0.8};

// Ordinal 1..5: bin i covers [edge[i-2], edge[i-1]), the top bin is closed
// at 1.0. Throws Error(kPrecondition) outside [0, 1].
int discretise(double score, const BinEdges& edges = kDefaultBinEdges);

// Arithmetic mean that is independent of input order bit for bit, and exact
// for constant input.
double order_independent_mean(std::span<const double> values);

struct SoftLabel {
  std::string claim_id;
  double mean_score = 0.0;
  std::size_t n_records = 0;
  int ordinal_bin = 1;
};

// Unweighted mean over every record of one claim, paper-only and
// review-informed alike.
SoftLabel soft_label(std::span<const ScoreRecord> records, const BinEdges& edges = kDefaultBinEdges);

// One soft label per claim, sorted by claim_id.
std::vector<SoftLabel> soft_labels(std::span<const ScoreRecord> records,
                                   const BinEdges& edges = kDefaultBinEdges);

}  // namespace rigourate
