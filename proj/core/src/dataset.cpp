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

#include "rigourate/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <fmt/format.h>

#include "rigourate/error.hpp"
#include "rigourate/prompts.hpp"

namespace rigourate {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "train";
}

Split parse_split(std::string_view text) {
  if (text == "train") return Split::kTrain;
  if (text == "dev") return Split::kDev;
  if (text == "test") return Split::kTest;
  throw Error(ErrorKind::kValidation, "split must be train, dev or test, got '" + std::string(text) + "'",
              "split");
}

Split SplitAssignment::of(std::string_view paper_id) const {
  auto it = papers.find(std::string(paper_id));
  if (it == papers.end()) {
    throw Error(ErrorKind::kValidation, "paper '" + std::string(paper_id) + "' has no split assignment",
                "paper_id");
  }
  return it->second;
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::kPrecondition, "uniform_index over an empty range", "n");
  // Largest multiple of n that fits, so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
  std::uint64_t draw = 0;
  do {
    draw = rng();
  } while (draw > limit);
  return draw % n;
}

std::array<std::size_t, 3> split_targets(std::size_t n, const SplitRatios& ratios) {
  const std::array<double, 3> r = {ratios.train, ratios.dev, ratios.test};
  std::size_t nonzero = 0;
  for (double x : r) nonzero += x > 0.0 ? 1 : 0;
  if (n < nonzero) {
    throw Error(ErrorKind::kPrecondition,
                fmt::format("{} papers cannot fill {} splits with nonzero ratios", n, nonzero), "papers");
  }
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> frac{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double raw = r[i] * static_cast<double>(n);
    counts[i] = static_cast<std::size_t>(std::floor(raw));
    frac[i] = raw - std::floor(raw);
    assigned += counts[i];
  }
  std::array<std::size_t, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  for (std::size_t i = 0; assigned < n; i = (i + 1) % 3) {
    if (r[order[i]] <= 0.0) continue;
    ++counts[order[i]];
    ++assigned;
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (r[i] <= 0.0 || counts[i] > 0) continue;
    std::size_t donor = 0;
    for (std::size_t j = 1; j < 3; ++j) {
      if (counts[j] > counts[donor]) donor = j;
    }
    --counts[donor];
    ++counts[i];
  }
  return counts;
}

namespace {

void shuffle(std::vector<std::string>& ids, std::mt19937_64& rng) {
  for (std::size_t i = ids.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(ids[i - 1], ids[j]);
  }
}

}  // namespace

SplitAssignment split_corpus(std::span<const PaperDocument> papers, const SplitRatios& ratios,
                             std::uint64_t seed) {
  if (ratios.train < 0 || ratios.dev < 0 || ratios.test < 0 ||
      std::fabs(ratios.train + ratios.dev + ratios.test - 1.0) > 1e-9) {
    throw Error(ErrorKind::kValidation, "split ratios must be non-negative and sum to 1", "ratios");
  }
  SplitAssignment out;
  out.seed = seed;
  out.ratios = ratios;

  std::vector<std::string> eligible, neurips;
  for (const auto& p : papers) {
    (p.venue == Venue::kNeurips ? neurips : eligible).push_back(p.paper_id);
  }
  std::sort(eligible.begin(), eligible.end());
  std::sort(neurips.begin(), neurips.end());
  const std::size_t n = eligible.size() + neurips.size();
  if (n == 0) return out;
  const auto targets = split_targets(n, ratios);

  std::mt19937_64 rng(seed);
  shuffle(eligible, rng);
  const std::size_t n_train = std::min(targets[0], eligible.size());
  if (n_train < targets[0]) {
    out.warnings.push_back(fmt::format(
        "train split holds {} of {} target papers: NeurIPS papers are excluded from train", n_train,
        targets[0]));
  }
  for (std::size_t i = 0; i < n_train; ++i) out.papers[eligible[i]] = Split::kTrain;

  std::vector<std::string> rest(eligible.begin() + static_cast<std::ptrdiff_t>(n_train), eligible.end());
  rest.insert(rest.end(), neurips.begin(), neurips.end());
  std::sort(rest.begin(), rest.end());
  shuffle(rest, rng);
  std::size_t n_dev = targets[1];
  if (n_train < targets[0]) {
    // Share the train shortfall between dev and test in proportion.
    const double held = ratios.dev + ratios.test;
    const double share = held > 0.0 ? ratios.dev / held : 0.5;
    n_dev = static_cast<std::size_t>(std::llround(share * static_cast<double>(rest.size())));
    if (ratios.test > 0.0 && n_dev == rest.size() && !rest.empty()) --n_dev;
    if (ratios.dev > 0.0 && n_dev == 0 && rest.size() > 1) n_dev = 1;
  }
  n_dev = std::min(n_dev, rest.size());
  for (std::size_t i = 0; i < rest.size(); ++i) out.papers[rest[i]] = i < n_dev ? Split::kDev : Split::kTest;
  return out;
}

json to_json(const SplitAssignment& a) {
  json papers = json::object();
  for (const auto& [id, split] : a.papers) papers[id] = to_string(split);
  return json{{"seed", a.seed},
              {"ratios", {a.ratios.train, a.ratios.dev, a.ratios.test}},
              {"papers", papers},
              {"warnings", a.warnings}};
}

SplitAssignment assignment_from_json(const json& j) {
  try {
    SplitAssignment a;
    a.seed = j.at("seed").get<std::uint64_t>();
    const auto r = j.at("ratios").get<std::vector<double>>();
    if (r.size() != 3) throw Error(ErrorKind::kParse, "ratios must hold three values", "ratios");
    a.ratios = SplitRatios{r[0], r[1], r[2]};
    for (const auto& [id, split] : j.at("papers").items()) a.papers[id] = parse_split(split.get<std::string>());
    if (j.contains("warnings")) a.warnings = j["warnings"].get<std::vector<std::string>>();
    return a;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed split assignment: ") + e.what(), "split");
  }
}

SplitCounts& SplitCounts::operator+=(const SplitCounts& o) {
  papers += o.papers;
  claims += o.claims;
  supporting_text += o.supporting_text;
  supporting_image += o.supporting_image;
  not_supporting_text += o.not_supporting_text;
  not_supporting_image += o.not_supporting_image;
  scores += o.scores;
  return *this;
}

SplitCounts DatasetStats::total() const {
  SplitCounts t;
  for (const auto& s : splits) t += s;
  return t;
}

DatasetStats dataset_stats(const SplitAssignment& assignment, std::span<const Claim> claims,
                           std::span<const ClaimEvidenceSet> evidence, std::span<const ScoreRecord> scores) {
  DatasetStats stats;
  auto slot = [&stats](Split s) -> SplitCounts& { return stats.splits[static_cast<std::size_t>(s)]; };
  for (const auto& [id, split] : assignment.papers) ++slot(split).papers;

  std::map<std::string, Split> claim_split;
  for (const auto& c : claims) {
    const Split s = assignment.of(c.paper_id);
    claim_split[c.claim_id] = s;
    ++slot(s).claims;
  }
  for (const auto& set : evidence) {
    auto& counts = slot(assignment.of(set.claim.paper_id));
    auto tally = [&counts](const EvidenceItem& item) {
      const bool text = item.kind == EvidenceKind::kTextPassage;
      if (item.supporting) {
        ++(text ? counts.supporting_text : counts.supporting_image);
      } else {
        ++(text ? counts.not_supporting_text : counts.not_supporting_image);
      }
    };
    for (const auto& item : set.items) tally(item);
    for (const auto& item : set.non_supporting_pool) tally(item);
  }
  std::set<std::string> labelled[3];
  for (const auto& r : scores) {
    auto it = claim_split.find(r.claim_id);
    if (it == claim_split.end()) {
      throw Error(ErrorKind::kValidation, "score record for unknown claim '" + r.claim_id + "'", "claim_id");
    }
    if (it->second == Split::kTrain) {
      ++slot(Split::kTrain).scores;
    } else {
      labelled[static_cast<std::size_t>(it->second)].insert(r.claim_id);
    }
  }
  slot(Split::kDev).scores = labelled[1].size();
  slot(Split::kTest).scores = labelled[2].size();
  return stats;
}

namespace {

json counts_json(const SplitCounts& c) {
  return json{{"papers", c.papers},
              {"claims", c.claims},
              {"supporting_text", c.supporting_text},
              {"supporting_image", c.supporting_image},
              {"not_supporting_text", c.not_supporting_text},
              {"not_supporting_image", c.not_supporting_image},
              {"scores", c.scores}};
}

SplitCounts counts_from(const json& j) {
  SplitCounts c;
  c.papers = j.at("papers").get<std::size_t>();
  c.claims = j.at("claims").get<std::size_t>();
  c.supporting_text = j.at("supporting_text").get<std::size_t>();
  c.supporting_image = j.at("supporting_image").get<std::size_t>();
  c.not_supporting_text = j.at("not_supporting_text").get<std::size_t>();
  c.not_supporting_image = j.at("not_supporting_image").get<std::size_t>();
  c.scores = j.at("scores").get<std::size_t>();
  return c;
}

}  // namespace

json to_json(const DatasetStats& stats) {
  json j = json::object();
  for (Split s : kAllSplits) j[std::string(to_string(s))] = counts_json(stats.at(s));
  j["total"] = counts_json(stats.total());
  return j;
}

DatasetStats dataset_stats_from_json(const json& j) {
  try {
    DatasetStats stats;
    for (Split s : kAllSplits) {
      stats.splits[static_cast<std::size_t>(s)] = counts_from(j.at(std::string(to_string(s))));
    }
    return stats;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed dataset stats: ") + e.what(), "dataset_stats");
  }
}

std::string evidence_document(const EvidenceItem& item, const PaperDocument& paper) {
  if (item.kind == EvidenceKind::kTextPassage) {
    std::string out;
    for (SentenceId id : item.sentence_ids) {
      const SentenceUnit* s = paper.find_sentence(id);
      if (s == nullptr) {
        throw Error(ErrorKind::kValidation,
                    fmt::format("evidence '{}' cites unknown sentence {}", item.evidence_id, id), "sentence_ids");
      }
      if (!out.empty()) out += ' ';
      out += s->text;
    }
    return out;
  }
  const VisualItem* v = paper.find_visual(item.visual_id);
  if (v == nullptr) {
    throw Error(ErrorKind::kValidation,
                fmt::format("evidence '{}' cites unknown visual '{}'", item.evidence_id, item.visual_id),
                "visual_id");
  }
  std::string out = v->caption;
  if (v->extracted_text && !v->extracted_text->empty()) out += "\n" + *v->extracted_text;
  return out;
}

PaperIndex index_papers(std::span<const PaperDocument> papers) {
  PaperIndex index;
  for (const auto& p : papers) index[p.paper_id] = &p;
  return index;
}

namespace {

const PaperDocument& paper_for(const PaperIndex& papers, const std::string& paper_id) {
  auto it = papers.find(paper_id);
  if (it == papers.end()) {
    throw Error(ErrorKind::kValidation, "no document for paper '" + paper_id + "'", "paper_id");
  }
  return *it->second;
}

ordered_json pair_row(const ClaimEvidenceSet& set, const EvidenceItem& item, const PaperDocument& paper,
                      int label) {
  ordered_json row;
  row["claim_id"] = set.claim.claim_id;
  row["evidence_id"] = item.evidence_id;
  row["system"] = export_prompts::kRetrievalSystem;
  row["instruction"] = export_prompts::kRetrievalInstruction;
  row["claim"] = set.claim.sentence.text;
  row["document"] = evidence_document(item, paper);
  row["label"] = label;
  return row;
}

}  // namespace

std::vector<ordered_json> retrieval_pairs(const ClaimEvidenceSet& set, const PaperDocument& paper,
                                          std::optional<std::size_t> negative_cap) {
  std::vector<ordered_json> rows;
  for (const auto& item : set.items) rows.push_back(pair_row(set, item, paper, 1));
  std::size_t negatives = 0;
  for (const auto& item : set.non_supporting_pool) {
    if (negative_cap && negatives >= *negative_cap) break;
    rows.push_back(pair_row(set, item, paper, 0));
    ++negatives;
  }
  return rows;
}

std::vector<ordered_json> export_retrieval_pairs(Split split, const SplitAssignment& assignment,
                                                 std::span<const ClaimEvidenceSet> evidence,
                                                 const PaperIndex& papers,
                                                 std::optional<std::size_t> negative_cap) {
  std::vector<ordered_json> rows;
  for (const auto& set : evidence) {
    if (assignment.of(set.claim.paper_id) != split) continue;
    auto pairs = retrieval_pairs(set, paper_for(papers, set.claim.paper_id), negative_cap);
    rows.insert(rows.end(), std::make_move_iterator(pairs.begin()), std::make_move_iterator(pairs.end()));
  }
  return rows;
}

Qrels export_qrels(Split split, const SplitAssignment& assignment, std::span<const ClaimEvidenceSet> evidence) {
  Qrels qrels;
  for (const auto& set : evidence) {
    if (assignment.of(set.claim.paper_id) != split) continue;
    auto& entry = qrels[set.claim.claim_id];
    for (const auto& item : set.items) {
      entry.judged.insert(item.evidence_id);
      entry.relevant.insert(item.evidence_id);
    }
    for (const auto& item : set.non_supporting_pool) entry.judged.insert(item.evidence_id);
  }
  return qrels;
}

std::string score_tag(double score) { return fmt::format("<score>{:.3f}</score>", score); }

std::vector<ordered_json> export_scorer_records(Split split, const SplitAssignment& assignment,
                                                std::span<const ClaimEvidenceSet> evidence,
                                                const PaperIndex& papers, std::span<const ScoreRecord> scores,
                                                const BinEdges& edges) {
  std::map<std::string, std::vector<ScoreRecord>> by_claim;
  for (const auto& r : scores) by_claim[r.claim_id].push_back(r);

  std::vector<ordered_json> rows;
  for (const auto& set : evidence) {
    if (assignment.of(set.claim.paper_id) != split) continue;
    auto it = by_claim.find(set.claim.claim_id);
    if (it == by_claim.end()) continue;
    const PaperDocument& paper = paper_for(papers, set.claim.paper_id);
    const std::string user = "Claim: " + set.claim.sentence.text + "\n\nEvidence:\n" + render_evidence(set, paper);
    json images = json::array();
    for (const auto& item : set.items) {
      if (item.kind == EvidenceKind::kTextPassage) continue;
      const VisualItem* v = paper.find_visual(item.visual_id);
      if (v != nullptr && v->image_ref) images.push_back(*v->image_ref);
    }
    if (split == Split::kTrain) {
      for (const auto& r : it->second) {
        ordered_json row;
        row["claim_id"] = r.claim_id;
        row["annotator_id"] = r.annotator_id;
        row["context"] = r.context.label();
        row["system"] = export_prompts::kScorerSystem;
        row["user"] = user;
        row["images"] = images;
        row["target"] = score_tag(r.score) + " " + r.justification;
        rows.push_back(std::move(row));
      }
    } else {
      const SoftLabel label = soft_label(it->second, edges);
      ordered_json row;
      row["claim_id"] = set.claim.claim_id;
      row["system"] = export_prompts::kScorerSystem;
      row["user"] = user;
      row["images"] = images;
      row["target"] = score_tag(label.mean_score);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string to_jsonl(const std::vector<ordered_json>& rows) {
  std::string out;
  for (const auto& row : rows) {
    out += row.dump();
    out += '\n';
  }
  return out;
}

}  // namespace rigourate
