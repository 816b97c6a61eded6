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

#include "rigourate/records.hpp"

#include <cmath>
#include <limits>

namespace rigourate {

using nlohmann::json;

namespace {

Origin parse_origin(const std::string& s) {
  if (s == "abstract") return Origin::kAbstract;
  if (s == "introduction") return Origin::kIntroduction;
  if (s == "body") return Origin::kBody;
  throw Error(ErrorKind::kParse, "unknown sentence origin '" + s + "'", "origin");
}

VisualKind parse_visual_kind(const std::string& s) {
  if (s == "figure") return VisualKind::kFigure;
  if (s == "table") return VisualKind::kTable;
  throw Error(ErrorKind::kParse, "unknown visual kind '" + s + "'", "kind");
}

EvidenceKind parse_evidence_kind(const std::string& s) {
  if (s == "text_passage") return EvidenceKind::kTextPassage;
  if (s == "figure") return EvidenceKind::kFigure;
  if (s == "table") return EvidenceKind::kTable;
  throw Error(ErrorKind::kParse, "unknown evidence kind '" + s + "'", "kind");
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

double num_at(const json& j, const char* key) {
  const auto& v = j.at(key);
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

std::optional<double> opt_at(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

}  // namespace

void to_json(json& j, const SentenceUnit& s) {
  j = json{{"id", s.id}, {"text", s.text}, {"origin", to_string(s.origin)}};
}

void from_json(const json& j, SentenceUnit& s) {
  s.id = j.at("id").get<SentenceId>();
  s.text = j.at("text").get<std::string>();
  s.origin = parse_origin(j.at("origin").get<std::string>());
}

void to_json(json& j, const PaperDocument& p) {
  json sections = json::array();
  for (const auto& s : p.body_sections) {
    sections.push_back({{"section_id", s.section_id}, {"title", s.title}, {"sentences", s.sentences}});
  }
  json visuals = json::array();
  for (const auto& v : p.visuals) {
    json item{{"visual_id", v.visual_id}, {"kind", to_string(v.kind)}, {"caption", v.caption}};
    if (v.extracted_text) item["extracted_text"] = *v.extracted_text;
    if (v.image_ref) item["image_ref"] = *v.image_ref;
    visuals.push_back(std::move(item));
  }
  json reviews = json::array();
  for (const auto& r : p.reviews) {
    reviews.push_back({{"review_id", r.review_id}, {"text", r.text}, {"overall_score", r.overall_score}});
  }
  j = json{{"paper_id", p.paper_id},
           {"venue", to_string(p.venue)},
           {"abstract", p.abstract},
           {"introduction", p.introduction},
           {"abstract_sentences", p.abstract_sentences},
           {"introduction_sentences", p.introduction_sentences},
           {"sections", std::move(sections)},
           {"visuals", std::move(visuals)},
           {"reviews", std::move(reviews)},
           {"reviewer_overall_scores", p.reviewer_overall_scores}};
}

void from_json(const json& j, PaperDocument& p) {
  p.paper_id = j.at("paper_id").get<std::string>();
  p.venue = parse_venue(j.at("venue").get<std::string>());
  p.abstract = j.at("abstract").get<std::string>();
  p.introduction = j.at("introduction").get<std::string>();
  p.abstract_sentences = j.at("abstract_sentences").get<std::vector<SentenceUnit>>();
  p.introduction_sentences = j.at("introduction_sentences").get<std::vector<SentenceUnit>>();
  p.body_sections.clear();
  for (const auto& s : j.at("sections")) {
    p.body_sections.push_back(Section{s.at("section_id").get<std::string>(), s.at("title").get<std::string>(),
                                      s.at("sentences").get<std::vector<SentenceUnit>>()});
  }
  p.visuals.clear();
  for (const auto& v : j.at("visuals")) {
    VisualItem item;
    item.visual_id = v.at("visual_id").get<std::string>();
    item.kind = parse_visual_kind(v.at("kind").get<std::string>());
    item.caption = v.at("caption").get<std::string>();
    if (v.contains("extracted_text")) item.extracted_text = v["extracted_text"].get<std::string>();
    if (v.contains("image_ref")) item.image_ref = v["image_ref"].get<std::string>();
    p.visuals.push_back(std::move(item));
  }
  p.reviews.clear();
  for (const auto& r : j.at("reviews")) {
    p.reviews.push_back(ReviewComment{r.at("review_id").get<std::string>(), r.at("text").get<std::string>(),
                                      r.at("overall_score").get<int>()});
  }
  p.reviewer_overall_scores = j.at("reviewer_overall_scores").get<std::vector<int>>();
  validate(p);
}

void to_json(json& j, const Claim& c) {
  j = json{{"claim_id", c.claim_id},
           {"paper_id", c.paper_id},
           {"sentence", c.sentence},
           {"votes", c.votes},
           {"consensus_label", c.consensus_label}};
}

void from_json(const json& j, Claim& c) {
  c.claim_id = j.at("claim_id").get<std::string>();
  c.paper_id = j.at("paper_id").get<std::string>();
  c.sentence = j.at("sentence").get<SentenceUnit>();
  c.votes = j.at("votes").get<Votes>();
  c.consensus_label = j.at("consensus_label").get<std::string>();
}

void to_json(json& j, const EvidenceItem& e) {
  j = json{{"evidence_id", e.evidence_id},
           {"claim_id", e.claim_id},
           {"kind", to_string(e.kind)},
           {"votes", e.votes},
           {"supporting", e.supporting}};
  if (e.kind == EvidenceKind::kTextPassage) {
    j["sentence_ids"] = e.sentence_ids;
    j["sentence_votes"] = e.sentence_votes;
  } else {
    j["visual_id"] = e.visual_id;
  }
}

void from_json(const json& j, EvidenceItem& e) {
  e.evidence_id = j.at("evidence_id").get<std::string>();
  e.claim_id = j.at("claim_id").get<std::string>();
  e.kind = parse_evidence_kind(j.at("kind").get<std::string>());
  e.votes = j.at("votes").get<std::map<std::string, bool>>();
  e.supporting = j.at("supporting").get<bool>();
  e.sentence_ids.clear();
  e.sentence_votes.clear();
  e.visual_id.clear();
  if (e.kind == EvidenceKind::kTextPassage) {
    e.sentence_ids = j.at("sentence_ids").get<std::vector<SentenceId>>();
    e.sentence_votes = j.at("sentence_votes").get<std::vector<std::map<std::string, bool>>>();
  } else {
    e.visual_id = j.at("visual_id").get<std::string>();
  }
}

void to_json(json& j, const ClaimEvidenceSet& s) {
  std::vector<EvidenceItem> all = s.items;
  all.insert(all.end(), s.non_supporting_pool.begin(), s.non_supporting_pool.end());
  j = json{{"claim", s.claim}, {"items", all}};
}

void from_json(const json& j, ClaimEvidenceSet& s) {
  s = make_evidence_set(j.at("claim").get<Claim>(), j.at("items").get<std::vector<EvidenceItem>>());
}

void to_json(json& j, const ScoreRecord& r) {
  j = json{{"claim_id", r.claim_id},
           {"annotator_id", r.annotator_id},
           {"context", r.context.label()},
           {"score", r.score},
           {"justification", r.justification}};
}

void from_json(const json& j, ScoreRecord& r) {
  r.claim_id = j.at("claim_id").get<std::string>();
  r.annotator_id = j.at("annotator_id").get<std::string>();
  r.context = ScoreContext::parse(j.at("context").get<std::string>());
  r.score = j.at("score").get<double>();
  r.justification = j.at("justification").get<std::string>();
}

void to_json(json& j, const SoftLabel& s) {
  j = json{{"claim_id", s.claim_id},
           {"mean_score", s.mean_score},
           {"n_records", s.n_records},
           {"ordinal_bin", s.ordinal_bin}};
}

void from_json(const json& j, SoftLabel& s) {
  s.claim_id = j.at("claim_id").get<std::string>();
  s.mean_score = j.at("mean_score").get<double>();
  s.n_records = j.at("n_records").get<std::size_t>();
  s.ordinal_bin = j.at("ordinal_bin").get<int>();
}

void to_json(json& j, const AuditEntry& a) {
  j = json{{"stage", a.stage},
           {"subject", a.subject},
           {"annotator_id", a.annotator_id},
           {"status", a.status},
           {"message", a.message}};
}

void from_json(const json& j, AuditEntry& a) {
  a.stage = j.at("stage").get<std::string>();
  a.subject = j.at("subject").get<std::string>();
  a.annotator_id = j.at("annotator_id").get<std::string>();
  a.status = j.at("status").get<std::string>();
  a.message = j.at("message").get<std::string>();
}

void to_json(json& j, const WelchResult& w) {
  j = json{{"t", num(w.t)}, {"p", num(w.p)}, {"dof", num(w.dof)}, {"degenerate", w.degenerate}};
}

void from_json(const json& j, WelchResult& w) {
  w.t = num_at(j, "t");
  w.p = num_at(j, "p");
  w.dof = num_at(j, "dof");
  w.degenerate = j.at("degenerate").get<bool>();
}

void to_json(json& j, const LooShiftRow& r) {
  j = json{{"excluded", r.excluded},        {"delta_mean", num(r.delta_mean)}, {"mad", num(r.mad)},
           {"welch", r.welch},              {"claims_used", r.claims_used},
           {"claims_dropped", r.claims_dropped}};
}

void from_json(const json& j, LooShiftRow& r) {
  r.excluded = j.at("excluded").get<std::string>();
  r.delta_mean = num_at(j, "delta_mean");
  r.mad = num_at(j, "mad");
  r.welch = j.at("welch").get<WelchResult>();
  r.claims_used = j.value("claims_used", std::size_t{0});
  r.claims_dropped = j.value("claims_dropped", std::size_t{0});
}

void to_json(json& j, const ShiftStats& s) {
  j = json{{"n", s.n},
           {"delta_mean", num(s.delta_mean)},
           {"delta_median", num(s.delta_median)},
           {"mean_abs_delta", num(s.mean_abs_delta)},
           {"pct_up", num(s.pct_up)},
           {"pct_down", num(s.pct_down)},
           {"pct_same", num(s.pct_same)}};
}

void from_json(const json& j, ShiftStats& s) {
  s.n = j.at("n").get<std::size_t>();
  s.delta_mean = num_at(j, "delta_mean");
  s.delta_median = num_at(j, "delta_median");
  s.mean_abs_delta = num_at(j, "mean_abs_delta");
  s.pct_up = num_at(j, "pct_up");
  s.pct_down = num_at(j, "pct_down");
  s.pct_same = num_at(j, "pct_same");
}

void to_json(json& j, const ShiftReport& r) {
  json bands = json::array();
  for (const auto& b : r.bands) {
    bands.push_back({{"label", b.band.label},
                     {"lower", b.band.lower},
                     {"upper", b.band.upper},
                     {"closed_upper", b.band.closed_upper},
                     {"stats", b.stats}});
  }
  j = json{{"overall", r.overall}, {"pearson_r", num(r.pearson_r)}, {"bands", bands}};
}

void from_json(const json& j, ShiftReport& r) {
  r.overall = j.at("overall").get<ShiftStats>();
  r.pearson_r = opt_at(j, "pearson_r");
  r.bands.clear();
  for (const auto& b : j.at("bands")) {
    r.bands.push_back(ShiftBandRow{ScoreBand{b.at("label").get<std::string>(), b.at("lower").get<double>(),
                                             b.at("upper").get<double>(), b.at("closed_upper").get<bool>()},
                                   b.at("stats").get<ShiftStats>()});
  }
}

void to_json(json& j, const AgreementRow& r) {
  j = json{{"excluded", r.excluded}, {"own", num(r.own)}, {"text", num(r.text)}, {"image", num(r.image)}};
}

void from_json(const json& j, AgreementRow& r) {
  r.excluded = j.at("excluded").get<std::string>();
  r.own = opt_at(j, "own");
  r.text = opt_at(j, "text");
  r.image = opt_at(j, "image");
}

void to_json(json& j, const RetrievalReport& r) {
  json recall = json::object();
  json ndcg = json::object();
  for (const auto& [k, v] : r.recall) recall[std::to_string(k)] = v;
  for (const auto& [k, v] : r.ndcg) ndcg[std::to_string(k)] = v;
  j = json{{"claims_evaluated", r.claims_evaluated},
           {"claims_without_relevant", r.claims_without_relevant},
           {"runs_without_qrels", r.runs_without_qrels},
           {"map", r.map},
           {"mrr", r.mrr},
           {"recall", recall},
           {"ndcg", ndcg}};
}

void from_json(const json& j, RetrievalReport& r) {
  r.claims_evaluated = j.value("claims_evaluated", std::size_t{0});
  r.claims_without_relevant = j.value("claims_without_relevant", std::size_t{0});
  r.runs_without_qrels = j.value("runs_without_qrels", std::size_t{0});
  r.map = j.at("map").get<double>();
  r.mrr = j.at("mrr").get<double>();
  r.recall.clear();
  r.ndcg.clear();
  for (const auto& [k, v] : j.at("recall").items()) r.recall[std::stoi(k)] = v.get<double>();
  for (const auto& [k, v] : j.at("ndcg").items()) r.ndcg[std::stoi(k)] = v.get<double>();
}

void to_json(json& j, const RegressionReport& r) {
  j = json{{"n", r.n},
           {"ccc", num(r.ccc.value)},
           {"ccc_degenerate", r.ccc.degenerate},
           {"mae", num(r.mae)},
           {"pearson", num(r.pearson)},
           {"warnings", r.warnings}};
}

void from_json(const json& j, RegressionReport& r) {
  r.n = j.value("n", std::size_t{0});
  r.ccc.value = num_at(j, "ccc");
  r.ccc.degenerate = j.value("ccc_degenerate", false);
  r.mae = num_at(j, "mae");
  r.pearson = opt_at(j, "pearson");
  r.warnings = j.value("warnings", std::vector<std::string>{});
}

}  // namespace rigourate
