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
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rigourate {

struct RankedRun {
  std::string claim_id;
  // Best first.
  std::vector<std::string> ranking;
  std::vector<double> scores;
};

using Runs = std::map<std::string, RankedRun>;

struct QrelsEntry {
  std::set<std::string> relevant;
  // Every judged evidence id, relevant or not.
  std::set<std::string> judged;
};

using Qrels = std::map<std::string, QrelsEntry>;

inline const std::vector<int> kDefaultCutoffs = {5, 10, 20};

// Per-claim metrics in [0, 1]. `relevant` must be non-empty for all but
// reciprocal_rank; callers exclude claims without relevant items.
double average_precision(std::span<const std::string> ranking, const std::set<std::string>& relevant);
double reciprocal_rank(std::span<const std::string> ranking, const std::set<std::string>& relevant);
double recall_at_k(std::span<const std::string> ranking, const std::set<std::string>& relevant, int k);
double ndcg_at_k(std::span<const std::string> ranking, const std::set<std::string>& relevant, int k);

// Mean reciprocal rank over the qrels claims with at least one relevant item.
double mrr(const Runs& runs, const Qrels& qrels);

struct RetrievalReport {
  std::size_t claims_evaluated = 0;
  std::size_t claims_without_relevant = 0;
  std::size_t runs_without_qrels = 0;
  double map = 0.0;
  double mrr = 0.0;
  std::map<int, double> recall;
  std::map<int, double> ndcg;
};

// Macro averages over qrels claims with at least one relevant item. Throws
// Error(kPrecondition) listing qrels claims that have no run, or on k < 1.
RetrievalReport evaluate_run(const Runs& runs, const Qrels& qrels,
                             const std::vector<int>& ks = kDefaultCutoffs);

// Whitespace-delimited "claim_id evidence_id rank score" lines. Rankings are
// ordered by rank, ties by line order. Blank lines and '#' comments are
// skipped. Duplicate evidence within a claim is an Error(kParse).
Runs parse_run(std::string_view text);
Runs read_run_file(const std::filesystem::path& path);

// "claim_id evidence_id relevance" lines, relevance 0 or 1.
Qrels parse_qrels(std::string_view text);
Qrels read_qrels_file(const std::filesystem::path& path);

std::string format_run(const Runs& runs);
std::string format_qrels(const Qrels& qrels);

}  // namespace rigourate
