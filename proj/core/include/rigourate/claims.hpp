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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rigourate/annotator.hpp"
#include "rigourate/audit.hpp"
#include "rigourate/corpus.hpp"

namespace rigourate {

inline constexpr std::string_view kOriginalStatement = "original_statement";
inline constexpr std::string_view kNotOriginalStatement = "not_original_statement";

// annotator_id -> label
using Votes = std::map<std::string, std::string>;

struct Claim {
  std::string claim_id;
  std::string paper_id;
  SentenceUnit sentence;
  Votes votes;
  std::string consensus_label;
};

std::string make_claim_id(std::string_view paper_id, SentenceId sentence_id);

// Strictly most frequent label; any tie for first place resolves to
// `tie_break`. Throws Error(kPrecondition) on an empty mapping.
std::string majority_vote(const Votes& votes, std::string_view tie_break);

// Label-only overload for callers that do not track annotator identity.
std::string majority_vote(const std::vector<std::string>& labels, std::string_view tie_break);

struct VoteCollection {
  Votes votes;
  std::vector<AuditEntry> audit;
};

// One own-statement vote per annotator that answered with a readable label.
// Failed annotators are absent from the mapping and recorded in the audit.
VoteCollection classify_sentence(const PaperDocument& paper, const SentenceUnit& sentence,
                                 const Panel& panel, std::size_t parallelism = 1);

struct ClaimOptions {
  std::string tie_break = std::string(kNotOriginalStatement);
  std::size_t parallelism = 1;
};

struct ClaimExtraction {
  // Every abstract/introduction sentence that received at least one vote.
  std::vector<Claim> labelled;
  // The subset whose consensus is original_statement, in document order.
  std::vector<Claim> claims;
  std::vector<AuditEntry> audit;
};

ClaimExtraction extract_claims(const PaperDocument& paper, const Panel& panel,
                               const ClaimOptions& options = {});

}  // namespace rigourate
