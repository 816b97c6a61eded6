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

#include "rigourate/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "rigourate/config.hpp"
#include "rigourate/dataset.hpp"
#include "rigourate/error.hpp"
#include "rigourate/hash.hpp"
#include "rigourate/ireval.hpp"
#include "rigourate/jsonl.hpp"
#include "rigourate/records.hpp"
#include "rigourate/regeval.hpp"
#include "rigourate/report.hpp"
#include "rigourate/stats.hpp"

namespace rigourate {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string_view>& subcommands() {
  static const std::vector<std::string_view> names = {
      "ingest", "extract-claims", "annotate-evidence", "score",           "aggregate",           "stats",
      "split",  "export",         "eval-retrieval",    "eval-overstatement", "report"};
  return names;
}

namespace {

// Hashes of the files a stage read and wrote, keyed by a portable name.
struct StageIo {
  std::map<std::string, std::string> inputs;
  std::map<std::string, std::string> outputs;
};

class Stage {
 public:
  Stage(std::string name, const RunOptions& options, std::ostream& out)
      : name_(std::move(name)), options_(options), out_(out), dir_(options.out) {}

  const fs::path& dir() const { return dir_; }
  std::ostream& out() { return out_; }
  const RunOptions& options() const { return options_; }

  const PipelineConfig& config() {
    if (!config_) {
      if (!options_.config) {
        throw Error(ErrorKind::kPrecondition, "'" + name_ + "' needs --config", "--config");
      }
      config_ = load_config(*options_.config);
      io_.inputs["config:" + options_.config->filename().string()] = sha256_hex(read_file(*options_.config));
    }
    return *config_;
  }

  fs::path corpus_dir() {
    if (options_.papers) return *options_.papers;
    const auto& dir = config().corpus_dir;
    if (dir.empty()) throw Error(ErrorKind::kPrecondition, "no corpus directory: pass --papers or set corpus_dir", "--papers");
    return dir;
  }

  // Throws a dependency error naming the stage that produces `file`.
  fs::path require(std::string_view file, std::string_view producer) {
    const fs::path path = dir_ / file;
    if (!fs::exists(path)) {
      throw Error(ErrorKind::kDependency,
                  fmt::format("'{}' needs {} in {}: run '{}' first", name_, file, dir_.filename().string(), producer),
                  std::string(producer));
    }
    io_.inputs[std::string(file)] = sha256_hex(read_file(path));
    return path;
  }

  void note_input(const std::string& name, const fs::path& path) { io_.inputs[name] = sha256_hex(read_file(path)); }

  void write(std::string_view rel, const std::string& contents) {
    const fs::path path = dir_ / rel;
    fs::create_directories(path.parent_path());
    write_file_atomic(path, contents);
    io_.outputs[fs::path(rel).generic_string()] = sha256_hex(contents);
  }

  void write_records(std::string_view rel, const std::vector<json>& records) { write(rel, to_jsonl(records)); }
  void write_json_file(std::string_view rel, const json& value) { write(rel, value.dump(2) + "\n"); }

  void write_audit(const std::vector<AuditEntry>& audit) {
    write(fmt::format("{}/{}.jsonl", stage_files::kAuditDir, name_), to_jsonl(to_records(audit)));
    if (!audit.empty()) out_ << fmt::format("{} audit entries written\n", audit.size());
  }

  Panel panel() {
    const auto& c = config();
    auto cache = std::make_shared<ResponseCache>(c.cache_dir);
    Panel panel;
    for (const auto& a : c.annotators) panel.emplace_back(a, make_backend(a, c.base_dir), cache);
    return panel;
  }

  std::vector<PaperDocument> papers() {
    return records_from<PaperDocument>(read_jsonl(require(stage_files::kPapers, "ingest")), "paper");
  }

  // Records the stage in manifest.json; earlier stages' entries are kept.
  void finish() {
    fs::create_directories(dir_);
    const fs::path path = dir_ / stage_files::kManifest;
    json manifest = fs::exists(path) ? read_json(path) : json::object();
    if (!manifest.contains("stages")) manifest["stages"] = json::object();
    manifest["stages"][name_] = json{{"inputs", io_.inputs}, {"outputs", io_.outputs}};
    write_json(path, manifest);
  }

 private:
  std::string name_;
  const RunOptions& options_;
  std::ostream& out_;
  fs::path dir_;
  std::optional<PipelineConfig> config_;
  StageIo io_;
};

using PaperMap = std::map<std::string, PaperDocument>;

PaperMap paper_map(std::vector<PaperDocument> papers) {
  PaperMap map;
  for (auto& p : papers) {
    std::string id = p.paper_id;
    map.emplace(std::move(id), std::move(p));
  }
  return map;
}

const PaperDocument& paper_of(const PaperMap& papers, const std::string& paper_id) {
  auto it = papers.find(paper_id);
  if (it == papers.end()) {
    throw Error(ErrorKind::kValidation, "record refers to unknown paper '" + paper_id + "'", "paper_id");
  }
  return it->second;
}

std::vector<ClaimEvidenceSet> load_evidence(Stage& s) {
  return records_from<ClaimEvidenceSet>(read_jsonl(s.require(stage_files::kEvidence, "annotate-evidence")),
                                        "evidence set");
}

std::vector<ScoreRecord> load_scores(Stage& s) {
  return records_from<ScoreRecord>(read_jsonl(s.require(stage_files::kScores, "score")), "score record");
}

SplitAssignment load_split(Stage& s) { return assignment_from_json(read_json(s.require(stage_files::kSplit, "split"))); }

std::vector<Split> selected_splits(const RunOptions& o) {
  if (o.split) return {parse_split(*o.split)};
  return {kAllSplits.begin(), kAllSplits.end()};
}

Split single_split(const RunOptions& o) { return o.split ? parse_split(*o.split) : Split::kTest; }

// ---- stages ----

void ingest(Stage& s) {
  const fs::path dir = s.corpus_dir();
  auto loaded = load_corpus(dir);
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      s.note_input("corpus/" + entry.path().filename().string(), entry.path());
    }
  }
  std::vector<PaperDocument> kept = s.config().filter_unanimous ? filter_unanimous(loaded) : loaded;
  std::vector<std::string> dropped;
  for (const auto& p : loaded) {
    if (std::none_of(kept.begin(), kept.end(), [&](const PaperDocument& k) { return k.paper_id == p.paper_id; })) {
      dropped.push_back(p.paper_id);
    }
  }
  std::size_t sentences = 0;
  for (const auto& p : kept) sentences += p.sentence_count();
  s.write_records(stage_files::kPapers, to_records(kept));
  s.write_json_file(stage_files::kIngest, json{{"loaded", loaded.size()},
                                               {"kept", kept.size()},
                                               {"dropped_not_unanimous", dropped},
                                               {"sentences", sentences}});
  s.out() << fmt::format("ingested {} papers ({} dropped as not unanimous), {} sentence units\n", kept.size(),
                         dropped.size(), sentences);
}

void extract(Stage& s) {
  const auto papers = s.papers();
  const auto& c = s.config();
  const Panel panel = s.panel();
  ClaimOptions options;
  options.tie_break = c.claim_tie_break;
  options.parallelism = c.parallelism;
  std::vector<Claim> labelled, claims;
  std::vector<AuditEntry> audit;
  for (const auto& paper : papers) {
    auto result = extract_claims(paper, panel, options);
    labelled.insert(labelled.end(), result.labelled.begin(), result.labelled.end());
    claims.insert(claims.end(), result.claims.begin(), result.claims.end());
    audit.insert(audit.end(), result.audit.begin(), result.audit.end());
  }
  s.write_records(stage_files::kLabelled, to_records(labelled));
  s.write_records(stage_files::kClaims, to_records(claims));
  s.write_audit(audit);
  s.out() << fmt::format("{} sentences labelled, {} claims\n", labelled.size(), claims.size());
}

void annotate(Stage& s) {
  const PaperMap papers = paper_map(s.papers());
  const auto claims = records_from<Claim>(read_jsonl(s.require(stage_files::kClaims, "extract-claims")), "claim");
  const auto& c = s.config();
  const Panel panel = s.panel();
  const Panel vision = vision_subset(panel);
  const bool any_vision = !vision.empty();
  const fs::path image_root = s.corpus_dir();
  MergeOptions merge;
  merge.max_gap = c.merge_max_gap;
  merge.negatives = c.negatives;

  std::vector<json> sets;
  std::vector<AuditEntry> audit;
  std::size_t supporting = 0, pool = 0;
  for (const auto& claim : claims) {
    const PaperDocument& paper = paper_of(papers, claim.paper_id);
    std::vector<ContextSelections> selections;
    for (const auto& context : build_contexts(paper, claim, c.token_budget)) {
      if (context.oversized) {
        audit.push_back(AuditEntry{"annotate-evidence", claim.claim_id + "|chunk" + std::to_string(context.chunk_index),
                                   "", "oversized",
                                   fmt::format("single sentence of ~{} tokens exceeds the budget of {}",
                                               context.token_estimate, c.token_budget)});
      }
      selections.push_back(annotate_text_evidence(claim, context, panel, audit, c.parallelism));
    }
    std::vector<VisualAnnotation> visuals;
    for (const auto& visual : paper.visuals) {
      if (!any_vision) {
        audit.push_back(AuditEntry{"annotate-evidence", claim.claim_id + "|" + visual.visual_id, "", "skipped",
                                   "no vision annotator configured"});
        continue;
      }
      visuals.push_back(annotate_visual_evidence(claim, visual, vision, image_root, audit, c.parallelism));
    }
    auto set = make_evidence_set(claim, aggregate_and_merge(claim.claim_id, selections, visuals, merge));
    supporting += set.items.size();
    pool += set.non_supporting_pool.size();
    sets.emplace_back(set);
  }
  s.write_records(stage_files::kEvidence, sets);
  s.write_audit(audit);
  s.out() << fmt::format("{} claims: {} supporting items, {} non-supporting items\n", claims.size(), supporting, pool);
}

void score(Stage& s) {
  const PaperMap papers = paper_map(s.papers());
  const auto sets = load_evidence(s);
  const auto& c = s.config();
  const Panel panel = s.panel();
  const fs::path image_root = s.corpus_dir();
  std::vector<ScoreRecord> records;
  std::vector<AuditEntry> audit;
  for (const auto& set : sets) {
    auto scored = score_all(set, paper_of(papers, set.claim.paper_id), panel, image_root, audit, c.parallelism);
    records.insert(records.end(), scored.begin(), scored.end());
  }
  s.write_records(stage_files::kScores, to_records(records));
  s.write_audit(audit);
  s.out() << fmt::format("{} score records for {} claims\n", records.size(), sets.size());
}

void aggregate(Stage& s) {
  const auto records = load_scores(s);
  const BinEdges edges = s.options().config ? s.config().bin_edges : kDefaultBinEdges;
  const auto labels = soft_labels(records, edges);
  s.write_records(stage_files::kSoftLabels, to_records(labels));
  s.out() << fmt::format("{} soft labels from {} score records\n", labels.size(), records.size());
}

// Per-unit votes of one annotation setting, for the leave-one-out analysis.
struct SettingVotes {
  ItemVotes items;
  std::set<std::string> voters;
};

std::optional<double> loo_alpha(const SettingVotes& votes, const std::string& annotator, const std::string& tie_break) {
  if (!votes.voters.contains(annotator)) return std::nullopt;
  try {
    return leave_one_out_agreement(votes.items, annotator, tie_break).alpha;
  } catch (const Error&) {
    return std::nullopt;
  }
}

void stats(Stage& s) {
  const auto& c = s.config();
  const auto labelled =
      records_from<Claim>(read_jsonl(s.require(stage_files::kLabelled, "extract-claims")), "labelled sentence");
  const auto sets = load_evidence(s);
  const auto records = load_scores(s);

  SettingVotes own, text, image;
  for (const auto& claim : labelled) {
    own.items.emplace_back(claim.votes.begin(), claim.votes.end());
    for (const auto& [id, label] : claim.votes) own.voters.insert(id);
  }
  auto label_of = [](bool selected) { return std::string(selected ? kSelected : kNotSelected); };
  for (const auto& set : sets) {
    auto visit = [&](const EvidenceItem& item) {
      if (item.kind == EvidenceKind::kTextPassage) {
        for (const auto& sentence : item.sentence_votes) {
          std::map<std::string, std::string> unit;
          for (const auto& [id, selected] : sentence) {
            unit[id] = label_of(selected);
            text.voters.insert(id);
          }
          text.items.push_back(std::move(unit));
        }
      } else {
        std::map<std::string, std::string> unit;
        for (const auto& [id, relevant] : item.votes) {
          unit[id] = label_of(relevant);
          image.voters.insert(id);
        }
        image.items.push_back(std::move(unit));
      }
    };
    for (const auto& item : set.items) visit(item);
    for (const auto& item : set.non_supporting_pool) visit(item);
  }

  json agreement = json::array();
  json loo = json::array();
  std::set<std::string> scorers;
  for (const auto& r : records) scorers.insert(r.annotator_id);
  for (const auto& a : c.annotators) {
    const std::string& id = a.annotator_id;
    agreement.push_back(AgreementRow{id, loo_alpha(own, id, c.claim_tie_break), loo_alpha(text, id, c.evidence_tie_break),
                                     loo_alpha(image, id, c.evidence_tie_break)});
    if (scorers.contains(id)) loo.push_back(loo_score_shift(records, id));
  }

  json review_shift = nullptr;
  const auto [paper_only, review_informed] = split_by_context(records);
  if (!paper_only.empty()) review_shift = review_shift_report(paper_only, review_informed);

  auto opt = [](std::optional<double> v) { return v ? json(*v) : json(nullptr); };
  json out{{"agreement", agreement},
           {"loo_shift", loo},
           {"review_shift", review_shift},
           {"pairwise_pearson",
            {{"paper_only", opt(mean_pairwise_pearson(records, ContextFilter::kPaperOnly))},
             {"review_informed", opt(mean_pairwise_pearson(records, ContextFilter::kReviewInformed))}}},
           {"counts",
            {{"labelled_sentences", labelled.size()},
             {"claims", sets.size()},
             {"text_units", text.items.size()},
             {"visual_units", image.items.size()},
             {"score_records", records.size()}}}};
  s.write_json_file(run_files::kStats, out);
  s.out() << fmt::format("stats over {} labelled sentences, {} claims, {} score records\n", labelled.size(),
                         sets.size(), records.size());
}

void split(Stage& s) {
  const auto papers = s.papers();
  const auto& c = s.config();
  const std::uint64_t seed = s.options().seed.value_or(c.seed);
  const auto assignment = split_corpus(papers, c.ratios, seed);
  s.write_json_file(stage_files::kSplit, to_json(assignment));
  std::array<std::size_t, 3> counts{};
  for (const auto& [id, sp] : assignment.papers) ++counts[static_cast<std::size_t>(sp)];
  s.out() << fmt::format("split {} papers: train {}, dev {}, test {} (seed {})\n", assignment.papers.size(), counts[0],
                         counts[1], counts[2], seed);
  for (const auto& w : assignment.warnings) s.out() << "warning: " << w << "\n";
}

void export_stage(Stage& s) {
  const auto papers = s.papers();
  const auto assignment = load_split(s);
  const auto sets = load_evidence(s);
  const auto records = load_scores(s);
  const auto& c = s.config();
  std::vector<Claim> claims;
  for (const auto& set : sets) claims.push_back(set.claim);
  const auto index = index_papers(papers);

  const DatasetStats ds = dataset_stats(assignment, claims, sets, records);
  s.write_json_file(run_files::kDatasetStats, to_json(ds));

  json files = json::object();
  for (Split sp : selected_splits(s.options())) {
    const std::string name(to_string(sp));
    const std::string retrieval = to_jsonl(export_retrieval_pairs(sp, assignment, sets, index, c.negative_cap));
    const std::string scorer = to_jsonl(export_scorer_records(sp, assignment, sets, index, records, c.bin_edges));
    const std::string qrels = format_qrels(export_qrels(sp, assignment, sets));
    const std::string dir(stage_files::kExportDir);
    s.write(dir + "/retrieval_" + name + ".jsonl", retrieval);
    s.write(dir + "/scorer_" + name + ".jsonl", scorer);
    s.write(dir + "/qrels_" + name + ".txt", qrels);
    files["retrieval_" + name + ".jsonl"] = sha256_hex(retrieval);
    files["scorer_" + name + ".jsonl"] = sha256_hex(scorer);
    files["qrels_" + name + ".txt"] = sha256_hex(qrels);
  }
  json manifest{{"seed", assignment.seed},
                {"ratios", {assignment.ratios.train, assignment.ratios.dev, assignment.ratios.test}},
                {"negative_cap", c.negative_cap ? json(*c.negative_cap) : json(nullptr)},
                {"files", files}};
  s.write_json_file(std::string(stage_files::kExportDir) + "/manifest.json", manifest);
  s.out() << format_dataset_table(ds);
}

void eval_retrieval(Stage& s) {
  const auto& o = s.options();
  if (!o.run_file) throw Error(ErrorKind::kPrecondition, "'eval-retrieval' needs --run", "--run");
  fs::path qrels_path;
  if (o.qrels_file) {
    qrels_path = *o.qrels_file;
  } else {
    const std::string name = fmt::format("{}/qrels_{}.txt", stage_files::kExportDir, to_string(single_split(o)));
    qrels_path = s.require(name, "export");
  }
  s.note_input("run:" + o.run_file->filename().string(), *o.run_file);
  if (o.qrels_file) s.note_input("qrels:" + o.qrels_file->filename().string(), *o.qrels_file);
  const Runs runs = read_run_file(*o.run_file);
  const Qrels qrels = read_qrels_file(qrels_path);
  const RetrievalRow row{o.model.value_or(o.run_file->stem().string()),
                         evaluate_run(runs, qrels, o.ks.empty() ? kDefaultCutoffs : o.ks)};
  fs::create_directories(s.dir());
  upsert_retrieval_row(s.dir() / run_files::kRetrievalEval, row);
  s.note_input(std::string(run_files::kRetrievalEval), s.dir() / run_files::kRetrievalEval);
  s.out() << format_retrieval_table({row});
  s.out() << fmt::format("{} claims evaluated, {} without relevant evidence excluded\n", row.report.claims_evaluated,
                         row.report.claims_without_relevant);
}

void eval_overstatement(Stage& s) {
  const auto& o = s.options();
  if (!o.predictions) throw Error(ErrorKind::kPrecondition, "'eval-overstatement' needs --predictions", "--predictions");
  s.note_input("predictions:" + o.predictions->filename().string(), *o.predictions);
  PredictionSet set;
  set.predicted = read_prediction_file(*o.predictions);
  if (o.reference) {
    s.note_input("reference:" + o.reference->filename().string(), *o.reference);
    set.reference = read_prediction_file(*o.reference);
  } else {
    const auto labels =
        records_from<SoftLabel>(read_jsonl(s.require(stage_files::kSoftLabels, "aggregate")), "soft label");
    const auto assignment = load_split(s);
    const Split wanted = single_split(o);
    const auto claims = records_from<Claim>(read_jsonl(s.require(stage_files::kClaims, "extract-claims")), "claim");
    std::map<std::string, std::string> paper_of_claim;
    for (const auto& c : claims) paper_of_claim[c.claim_id] = c.paper_id;
    for (const auto& l : labels) {
      auto it = paper_of_claim.find(l.claim_id);
      if (it == paper_of_claim.end()) {
        throw Error(ErrorKind::kValidation, "soft label for unknown claim '" + l.claim_id + "'", "claim_id");
      }
      if (assignment.of(it->second) == wanted) set.reference[l.claim_id] = l.mean_score;
    }
  }
  const RegressionRow row{o.model.value_or(o.predictions->stem().string()), evaluate_predictions(set)};
  fs::create_directories(s.dir());
  upsert_regression_row(s.dir() / run_files::kOverstatementEval, row);
  for (const auto& w : row.report.warnings) s.out() << "warning: " << w << "\n";
  s.out() << format_regression_table({row});
}

void report(Stage& s) {
  const std::string text = render_report(s.dir());
  s.write(run_files::kReport, text);
  s.out() << text;
}

}  // namespace

void run_stage(std::string_view name, const RunOptions& options, std::ostream& out) {
  Stage stage(std::string(name), options, out);
  if (name == "ingest") {
    ingest(stage);
  } else if (name == "extract-claims") {
    extract(stage);
  } else if (name == "annotate-evidence") {
    annotate(stage);
  } else if (name == "score") {
    score(stage);
  } else if (name == "aggregate") {
    aggregate(stage);
  } else if (name == "stats") {
    stats(stage);
  } else if (name == "split") {
    split(stage);
  } else if (name == "export") {
    export_stage(stage);
  } else if (name == "eval-retrieval") {
    eval_retrieval(stage);
  } else if (name == "eval-overstatement") {
    eval_overstatement(stage);
  } else if (name == "report") {
    report(stage);
    return;  // report only reads; the manifest is left alone
  } else {
    throw Error(ErrorKind::kPrecondition, "unknown subcommand '" + std::string(name) + "'", "subcommand");
  }
  stage.finish();
}

int run_subcommand(std::string_view name, const RunOptions& options, std::ostream& out, std::ostream& err) {
  const auto& names = subcommands();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    err << "error[usage] unknown subcommand '" << name << "'\n";
    return 2;
  }
  try {
    run_stage(name, options, out);
    return 0;
  } catch (const Error& e) {
    err << "error[" << to_string(e.kind()) << "] " << (e.field().empty() ? "" : e.field() + ": ") << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error[internal] " << e.what() << "\n";
  }
  return 1;
}

}  // namespace rigourate
