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

#include "rigourate/evidence.hpp"

#include <algorithm>
#include <set>

#include "rigourate/error.hpp"
#include "rigourate/parallel.hpp"

namespace rigourate {

namespace fs = std::filesystem;

namespace {

std::size_t code_points(std::string_view text) {
  return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

std::size_t tokens_for(std::size_t chars) { return (chars + 3) / 4; }

constexpr std::string_view kRelevant = "relevant";
constexpr std::string_view kNotRelevant = "not_relevant";

}  // namespace

std::size_t estimate_tokens(std::string_view text) { return tokens_for(code_points(text)); }

std::string numbered_line(const SentenceUnit& sentence) {
  return "[" + std::to_string(sentence.id) + "] " + sentence.text;
}

std::string_view to_string(EvidenceKind kind) {
  switch (kind) {
    case EvidenceKind::kTextPassage: return "text_passage";
    case EvidenceKind::kFigure: return "figure";
    case EvidenceKind::kTable: return "table";
  }
  return "text_passage";
}

EvidenceKind evidence_kind(VisualKind kind) {
  return kind == VisualKind::kFigure ? EvidenceKind::kFigure : EvidenceKind::kTable;
}

std::vector<EvidenceContext> build_contexts(std::span<const SentenceUnit> body,
                                            std::string_view claim_id, std::size_t budget) {
  if (budget == 0) throw Error(ErrorKind::kPrecondition, "token budget must be positive", "budget");
  std::vector<EvidenceContext> chunks;
  EvidenceContext current;
  std::size_t current_chars = 0;

  auto flush = [&] {
    if (current.sentence_ids.empty()) return;
    current.claim_id = std::string(claim_id);
    current.chunk_index = chunks.size();
    current.token_estimate = tokens_for(current_chars);
    chunks.push_back(std::move(current));
    current = EvidenceContext{};
    current_chars = 0;
  };

  for (const auto& sentence : body) {
    const std::string line = numbered_line(sentence);
    const std::size_t line_chars = code_points(line);
    if (tokens_for(line_chars) > budget) {
      flush();
      current.sentence_ids.push_back(sentence.id);
      current.rendered_numbered_text = line;
      current.oversized = true;
      current_chars = line_chars;
      flush();
      continue;
    }
    const std::size_t joined = current.sentence_ids.empty() ? line_chars : current_chars + 1 + line_chars;
    if (tokens_for(joined) > budget) flush();
    if (!current.sentence_ids.empty()) {
      current.rendered_numbered_text += '\n';
      current_chars += 1;
    }
    current.rendered_numbered_text += line;
    current_chars += line_chars;
    current.sentence_ids.push_back(sentence.id);
  }
  flush();
  return chunks;
}

std::vector<EvidenceContext> build_contexts(const PaperDocument& paper, const Claim& claim,
                                            std::size_t budget) {
  const auto body = paper.body_sentences();
  return build_contexts(body, claim.claim_id, budget);
}

ContextSelections annotate_text_evidence(const Claim& claim, const EvidenceContext& context,
                                         const Panel& panel, std::vector<AuditEntry>& audit,
                                         std::size_t parallelism) {
  const Bindings bindings{{"CLAIM", claim.sentence.text},
                          {"NUMBERED SENTENCES", context.rendered_numbered_text}};
  const ResponseParser parser = sentence_number_parser(
      std::set<SentenceId>(context.sentence_ids.begin(), context.sentence_ids.end()));

  std::vector<AnnotationResult> results(panel.size());
  parallel_for(panel.size(), parallelism, [&](std::size_t i) {
    results[i] = panel[i].annotate(templates::text_evidence(), bindings, {}, parser);
  });

  ContextSelections out;
  out.claim_id = claim.claim_id;
  out.chunk_index = context.chunk_index;
  out.sentence_ids = context.sentence_ids;
  const std::string subject = claim.claim_id + "#" + std::to_string(context.chunk_index);
  for (const auto& r : results) {
    for (const auto& w : r.warnings) {
      audit.push_back(AuditEntry{"annotate-evidence", subject, r.annotator_id, "warning", w});
    }
    if (r.ok()) {
      out.selections[r.annotator_id] = r.value<std::vector<SentenceId>>();
    } else {
      audit.push_back(AuditEntry{"annotate-evidence", subject, r.annotator_id,
                                 std::string(to_string(r.status)), r.error});
    }
  }
  return out;
}

VisualAnnotation annotate_visual_evidence(const Claim& claim, const VisualItem& visual,
                                          const Panel& vision_panel, const fs::path& image_root,
                                          std::vector<AuditEntry>& audit,
                                          std::size_t parallelism) {
  VisualAnnotation out;
  out.claim_id = claim.claim_id;
  out.visual_id = visual.visual_id;
  out.kind = visual.kind;
  const std::string subject = claim.claim_id + "@" + visual.visual_id;

  Panel panel;
  for (const auto& a : vision_panel) {
    if (a.is_vision()) {
      panel.push_back(a);
    } else {
      audit.push_back(AuditEntry{"annotate-evidence", subject, a.id(), "modality",
                                 "text annotator excluded from visual evidence"});
    }
  }
  if (panel.empty()) {
    throw Error(ErrorKind::kPrecondition, "visual evidence needs at least one vision annotator",
                "vision_panel");
  }

  std::vector<fs::path> images;
  if (visual.image_ref) {
    fs::path image = *visual.image_ref;
    if (image.is_relative()) image = image_root / image;
    std::error_code ec;
    if (!fs::is_regular_file(image, ec)) {
      for (const auto& a : panel) {
        audit.push_back(AuditEntry{"annotate-evidence", subject, a.id(), "modality",
                                   "missing image payload: " + visual.image_ref.value()});
      }
      return out;
    }
    images.push_back(std::move(image));
  }

  const Bindings bindings{
      {"FIG_TYPE", std::string(to_string(visual.kind))},
      {"CLAIM", claim.sentence.text},
      {"CAPTION", visual.caption},
      {"IMAGE_TEXT", visual.extracted_text.value_or("(none)")},
  };
  const ResponseParser parser =
      label_parser({std::string(kRelevant), std::string(kNotRelevant)});

  std::vector<AnnotationResult> results(panel.size());
  parallel_for(panel.size(), parallelism, [&](std::size_t i) {
    results[i] = panel[i].annotate(templates::visual_evidence(), bindings, images, parser);
  });
  for (const auto& r : results) {
    if (r.ok()) {
      out.votes[r.annotator_id] = r.value<std::string>() == kRelevant;
    } else {
      audit.push_back(AuditEntry{"annotate-evidence", subject, r.annotator_id,
                                 std::string(to_string(r.status)), r.error});
    }
  }
  return out;
}

bool strict_majority(std::size_t yes, std::size_t voters) { return voters > 0 && 2 * yes > voters; }

std::vector<std::vector<SentenceId>> consecutive_runs(std::span<const SentenceId> sorted_ids) {
  std::vector<std::vector<SentenceId>> runs;
  for (SentenceId id : sorted_ids) {
    if (runs.empty() || runs.back().back() + 1 != id) runs.emplace_back();
    runs.back().push_back(id);
  }
  return runs;
}

namespace {

struct SentenceTally {
  std::map<std::string, bool> votes;
  std::size_t yes = 0;
  bool supporting() const { return strict_majority(yes, votes.size()); }
};

std::string text_evidence_id(std::string_view claim_id, const std::vector<SentenceId>& run) {
  return std::string(claim_id) + ":t" + std::to_string(run.front()) + "-" + std::to_string(run.back());
}

EvidenceItem make_passage(std::string_view claim_id, const std::vector<SentenceId>& run,
                          const std::map<SentenceId, SentenceTally>& tallies, bool supporting) {
  EvidenceItem item;
  item.evidence_id = text_evidence_id(claim_id, run);
  item.claim_id = std::string(claim_id);
  item.kind = EvidenceKind::kTextPassage;
  item.sentence_ids = run;
  item.supporting = supporting;
  for (SentenceId id : run) {
    const auto& tally = tallies.at(id);
    item.sentence_votes.push_back(tally.votes);
    for (const auto& [annotator, selected] : tally.votes) {
      bool& any = item.votes[annotator];
      any = any || selected;
    }
  }
  return item;
}

}  // namespace

std::vector<EvidenceItem> aggregate_and_merge(std::string_view claim_id,
                                              std::span<const ContextSelections> contexts,
                                              std::span<const VisualAnnotation> visuals,
                                              const MergeOptions& options) {
  std::map<SentenceId, SentenceTally> tallies;
  for (const auto& ctx : contexts) {
    for (SentenceId id : ctx.sentence_ids) {
      auto& tally = tallies[id];
      for (const auto& [annotator, picked] : ctx.selections) {
        const bool selected = std::binary_search(picked.begin(), picked.end(), id);
        tally.votes[annotator] = selected;
        if (selected) ++tally.yes;
      }
    }
  }

  std::vector<SentenceId> supporting_ids;
  for (const auto& [id, tally] : tallies) {
    if (tally.supporting()) supporting_ids.push_back(id);
  }

  // Supporting runs, optionally bridging short gaps of known sentences.
  std::vector<std::vector<SentenceId>> supporting_runs;
  for (SentenceId id : supporting_ids) {
    if (!supporting_runs.empty()) {
      auto& run = supporting_runs.back();
      const SentenceId last = run.back();
      bool bridge = id - last - 1 <= options.max_gap;
      for (SentenceId g = last + 1; bridge && g < id; ++g) bridge = tallies.contains(g);
      if (bridge) {
        for (SentenceId g = last + 1; g <= id; ++g) run.push_back(g);
        continue;
      }
    }
    supporting_runs.push_back({id});
  }

  std::set<SentenceId> covered;
  for (const auto& run : supporting_runs) covered.insert(run.begin(), run.end());
  std::vector<SentenceId> negative_ids;
  for (const auto& [id, tally] : tallies) {
    if (covered.contains(id)) continue;
    if (options.negatives == NegativePolicy::kExhaustive || tally.yes > 0) negative_ids.push_back(id);
  }

  std::vector<EvidenceItem> text_items;
  for (const auto& run : supporting_runs) text_items.push_back(make_passage(claim_id, run, tallies, true));
  for (const auto& run : consecutive_runs(negative_ids)) {
    text_items.push_back(make_passage(claim_id, run, tallies, false));
  }
  std::sort(text_items.begin(), text_items.end(), [](const EvidenceItem& a, const EvidenceItem& b) {
    return a.sentence_ids.front() < b.sentence_ids.front();
  });

  std::vector<EvidenceItem> items = std::move(text_items);
  for (const auto& visual : visuals) {
    EvidenceItem item;
    item.evidence_id = std::string(claim_id) + ":v:" + visual.visual_id;
    item.claim_id = std::string(claim_id);
    item.kind = evidence_kind(visual.kind);
    item.visual_id = visual.visual_id;
    item.votes = visual.votes;
    std::size_t yes = 0;
    for (const auto& [annotator, relevant] : visual.votes) yes += relevant ? 1 : 0;
    item.supporting = strict_majority(yes, visual.votes.size());
    items.push_back(std::move(item));
  }
  return items;
}

bool recompute_supporting(const EvidenceItem& item, std::size_t max_gap) {
  auto majority = [](const std::map<std::string, bool>& votes) {
    std::size_t yes = 0;
    for (const auto& [annotator, v] : votes) yes += v ? 1 : 0;
    return strict_majority(yes, votes.size());
  };
  if (item.kind != EvidenceKind::kTextPassage) return majority(item.votes);
  if (item.sentence_votes.empty()) return false;
  if (!majority(item.sentence_votes.front()) || !majority(item.sentence_votes.back())) return false;
  std::size_t gap = 0;
  for (const auto& votes : item.sentence_votes) {
    if (majority(votes)) {
      gap = 0;
    } else if (++gap > max_gap) {
      return false;
    }
  }
  return true;
}

ClaimEvidenceSet make_evidence_set(Claim claim, std::vector<EvidenceItem> all_items) {
  ClaimEvidenceSet set;
  set.claim = std::move(claim);
  for (auto& item : all_items) {
    (item.supporting ? set.items : set.non_supporting_pool).push_back(std::move(item));
  }
  return set;
}

}  // namespace rigourate
