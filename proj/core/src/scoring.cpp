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

#include "rigourate/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rigourate/error.hpp"
#include "rigourate/parallel.hpp"

namespace rigourate {

namespace fs = std::filesystem;

std::string ScoreContext::label() const {
  return review_id ? "review:" + *review_id : std::string("paper_only");
}

ScoreContext ScoreContext::parse(std::string_view label) {
  if (label == "paper_only") return {};
  constexpr std::string_view kPrefix = "review:";
  if (label.starts_with(kPrefix) && label.size() > kPrefix.size()) {
    return ScoreContext{std::string(label.substr(kPrefix.size()))};
  }
  throw Error(ErrorKind::kParse, "unknown score context '" + std::string(label) + "'", "context");
}

std::string render_evidence(const ClaimEvidenceSet& set, const PaperDocument& paper) {
  std::vector<const EvidenceItem*> text;
  std::vector<const EvidenceItem*> visual;
  for (const auto& item : set.items) {
    (item.kind == EvidenceKind::kTextPassage ? text : visual).push_back(&item);
  }
  std::sort(text.begin(), text.end(), [](const EvidenceItem* a, const EvidenceItem* b) {
    return a->sentence_ids.front() < b->sentence_ids.front();
  });
  auto visual_pos = [&paper](const EvidenceItem* item) {
    for (std::size_t i = 0; i < paper.visuals.size(); ++i) {
      if (paper.visuals[i].visual_id == item->visual_id) return i;
    }
    return paper.visuals.size();
  };
  std::stable_sort(visual.begin(), visual.end(), [&](const EvidenceItem* a, const EvidenceItem* b) {
    return visual_pos(a) < visual_pos(b);
  });

  std::string out;
  auto append_block = [&out](const std::string& block) {
    if (!out.empty()) out += "\n\n";
    out += block;
  };
  for (const auto* item : text) {
    std::string passage;
    for (SentenceId id : item->sentence_ids) {
      const SentenceUnit* s = paper.find_sentence(id);
      if (!s) continue;
      if (!passage.empty()) passage += ' ';
      passage += s->text;
    }
    append_block(passage);
  }
  for (const auto* item : visual) {
    const VisualItem* v = paper.find_visual(item->visual_id);
    if (!v) continue;
    std::string block = std::string(v->kind == VisualKind::kFigure ? "Figure" : "Table") + " (" +
                        v->visual_id + ")\nCaption: " + v->caption;
    if (v->extracted_text) block += "\nVisible text: " + *v->extracted_text;
    append_block(block);
  }
  if (out.empty()) out = "(no supporting evidence)";
  return out;
}

std::vector<fs::path> evidence_images(const ClaimEvidenceSet& set, const PaperDocument& paper,
                                      const fs::path& image_root) {
  std::vector<fs::path> images;
  for (const auto& v : paper.visuals) {
    if (!v.image_ref) continue;
    const bool supporting = std::any_of(set.items.begin(), set.items.end(), [&](const EvidenceItem& i) {
      return i.kind != EvidenceKind::kTextPassage && i.visual_id == v.visual_id;
    });
    if (!supporting) continue;
    fs::path image = *v.image_ref;
    if (image.is_relative()) image = image_root / image;
    std::error_code ec;
    if (fs::is_regular_file(image, ec)) images.push_back(std::move(image));
  }
  return images;
}

std::optional<ScoreRecord> score_claim(const ClaimEvidenceSet& set, const PaperDocument& paper,
                                       const Annotator& annotator, const ScoreContext& context,
                                       const fs::path& image_root, std::vector<AuditEntry>& audit) {
  Bindings bindings{{"CLAIM", set.claim.sentence.text}, {"EVIDENCE", render_evidence(set, paper)}};
  if (context.review_id) {
    const ReviewComment* review = paper.find_review(*context.review_id);
    if (!review) {
      throw Error(ErrorKind::kPrecondition,
                  "paper " + paper.paper_id + " has no review '" + *context.review_id + "'",
                  "review_id");
    }
    bindings["REVIEW"] = review->text;
  }
  std::vector<fs::path> images;
  if (annotator.is_vision()) images = evidence_images(set, paper, image_root);

  const std::string subject = set.claim.claim_id + "|" + context.label();
  AnnotationResult result =
      annotator.annotate(templates::overstatement(), bindings, images, score_parser());
  for (const auto& w : result.warnings) {
    audit.push_back(AuditEntry{"score", subject, annotator.id(), "warning", w});
  }
  if (!result.ok()) {
    audit.push_back(AuditEntry{"score", subject, annotator.id(),
                               std::string(to_string(result.status)), result.error});
    return std::nullopt;
  }
  const auto& parsed = result.value<ScoreJustification>();
  ScoreRecord record;
  record.claim_id = set.claim.claim_id;
  record.annotator_id = annotator.id();
  record.context = context;
  record.score = parsed.score;
  record.justification =
      parsed.justification.empty() ? std::string(kMissingJustification) : parsed.justification;
  return record;
}

std::vector<ScoreRecord> score_all(const ClaimEvidenceSet& set, const PaperDocument& paper,
                                   const Panel& panel, const fs::path& image_root,
                                   std::vector<AuditEntry>& audit, std::size_t parallelism) {
  std::vector<ScoreContext> contexts{ScoreContext{}};
  for (const auto& r : paper.reviews) contexts.push_back(ScoreContext{r.review_id});

  const std::size_t n = panel.size() * contexts.size();
  std::vector<std::optional<ScoreRecord>> slots(n);
  std::vector<std::vector<AuditEntry>> audits(n);
  parallel_for(n, parallelism, [&](std::size_t i) {
    const auto& annotator = panel[i / contexts.size()];
    slots[i] = score_claim(set, paper, annotator, contexts[i % contexts.size()], image_root, audits[i]);
  });

  std::vector<ScoreRecord> records;
  for (std::size_t i = 0; i < n; ++i) {
    audit.insert(audit.end(), audits[i].begin(), audits[i].end());
    if (slots[i]) records.push_back(std::move(*slots[i]));
  }
  return records;
}

int discretise(double score, const BinEdges& edges) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw Error(ErrorKind::kPrecondition, "score outside [0, 1]", "score");
  }
  int bin = 1;
  for (double edge : edges) {
    if (score >= edge) ++bin;
  }
  return bin;
}

double order_independent_mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::kPrecondition, "mean of zero values", "values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  // Shifting by the minimum makes constant input exact; Neumaier summation of
  // the sorted deviations keeps the rest accurate.
  const double base = sorted.front();
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : sorted) {
    const double x = v - base;
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      compensation += (sum - t) + x;
    } else {
      compensation += (x - t) + sum;
    }
    sum = t;
  }
  const double mean = base + (sum + compensation) / static_cast<double>(sorted.size());
  return std::clamp(mean, sorted.front(), sorted.back());
}

SoftLabel soft_label(std::span<const ScoreRecord> records, const BinEdges& edges) {
  if (records.empty()) throw Error(ErrorKind::kPrecondition, "soft label over zero records", "records");
  std::vector<double> scores;
  scores.reserve(records.size());
  for (const auto& r : records) {
    if (r.claim_id != records.front().claim_id) {
      throw Error(ErrorKind::kPrecondition, "soft label mixes claims " + records.front().claim_id +
                                                " and " + r.claim_id, "claim_id");
    }
    scores.push_back(r.score);
  }
  SoftLabel label;
  label.claim_id = records.front().claim_id;
  label.mean_score = order_independent_mean(scores);
  label.n_records = records.size();
  label.ordinal_bin = discretise(label.mean_score, edges);
  return label;
}

std::vector<SoftLabel> soft_labels(std::span<const ScoreRecord> records, const BinEdges& edges) {
  std::map<std::string, std::vector<ScoreRecord>> by_claim;
  for (const auto& r : records) by_claim[r.claim_id].push_back(r);
  std::vector<SoftLabel> out;
  for (const auto& [claim_id, group] : by_claim) out.push_back(soft_label(group, edges));
  return out;
}

}  // namespace rigourate
