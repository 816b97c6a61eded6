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

#include "rigourate/claims.hpp"

#include <algorithm>

#include "rigourate/error.hpp"
#include "rigourate/parallel.hpp"

namespace rigourate {

std::string make_claim_id(std::string_view paper_id, SentenceId sentence_id) {
  return std::string(paper_id) + ":" + std::to_string(sentence_id);
}

std::string majority_vote(const std::vector<std::string>& labels, std::string_view tie_break) {
  if (labels.empty()) throw Error(ErrorKind::kPrecondition, "majority vote over zero votes", "votes");
  std::map<std::string, std::size_t> counts;
  for (const auto& label : labels) ++counts[label];
  std::size_t best = 0;
  std::size_t n_best = 0;
  const std::string* winner = nullptr;
  for (const auto& [label, count] : counts) {
    if (count > best) {
      best = count;
      n_best = 1;
      winner = &label;
    } else if (count == best) {
      ++n_best;
    }
  }
  return n_best == 1 ? *winner : std::string(tie_break);
}

std::string majority_vote(const Votes& votes, std::string_view tie_break) {
  std::vector<std::string> labels;
  labels.reserve(votes.size());
  for (const auto& [annotator, label] : votes) labels.push_back(label);
  return majority_vote(labels, tie_break);
}

VoteCollection classify_sentence(const PaperDocument& paper, const SentenceUnit& sentence,
                                 const Panel& panel, std::size_t parallelism) {
  if (sentence.origin == Origin::kBody) {
    throw Error(ErrorKind::kPrecondition, "claims come only from the abstract or introduction",
                "origin");
  }
  if (panel.empty()) throw Error(ErrorKind::kPrecondition, "annotator panel is empty", "panel");

  const Bindings bindings{{"ABSTRACT", paper.abstract},
                          {"INTRODUCTION", paper.introduction},
                          {"SENTENCE", sentence.text}};
  const ResponseParser parser = label_parser(
      {std::string(kOriginalStatement), std::string(kNotOriginalStatement)});

  std::vector<AnnotationResult> results(panel.size());
  parallel_for(panel.size(), parallelism, [&](std::size_t i) {
    results[i] = panel[i].annotate(templates::own_statement(), bindings, {}, parser);
  });

  VoteCollection out;
  const std::string subject = make_claim_id(paper.paper_id, sentence.id);
  for (const auto& r : results) {
    if (r.ok()) {
      out.votes[r.annotator_id] = r.value<std::string>();
    } else {
      out.audit.push_back(AuditEntry{"extract-claims", subject, r.annotator_id,
                                     std::string(to_string(r.status)), r.error});
    }
  }
  if (out.votes.empty()) {
    out.audit.push_back(AuditEntry{"extract-claims", subject, "", "skipped",
                                   "every annotator failed; sentence skipped"});
  }
  return out;
}

ClaimExtraction extract_claims(const PaperDocument& paper, const Panel& panel,
                               const ClaimOptions& options) {
  ClaimExtraction out;
  for (const auto& sentence : paper.claim_candidates()) {
    VoteCollection collected = classify_sentence(paper, sentence, panel, options.parallelism);
    out.audit.insert(out.audit.end(), collected.audit.begin(), collected.audit.end());
    if (collected.votes.empty()) continue;
    Claim claim;
    claim.claim_id = make_claim_id(paper.paper_id, sentence.id);
    claim.paper_id = paper.paper_id;
    claim.sentence = sentence;
    claim.votes = std::move(collected.votes);
    claim.consensus_label = majority_vote(claim.votes, options.tie_break);
    if (claim.consensus_label == kOriginalStatement) out.claims.push_back(claim);
    out.labelled.push_back(std::move(claim));
  }
  return out;
}

}  // namespace rigourate
