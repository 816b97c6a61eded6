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

#include "rigourate/config.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>

#include "rigourate/error.hpp"
#include "rigourate/jsonl.hpp"

namespace rigourate {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& message) {
  throw Error(ErrorKind::kValidation, field + ": " + message, field);
}

void check_keys(const json& j, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) bad(where.empty() ? "<root>" : where, "must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) bad(where.empty() ? key : where + "." + key, "unknown key");
  }
}

template <typename T>
T get_or(const json& j, const char* key, const std::string& where, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  try {
    return j[key].get<T>();
  } catch (const json::exception&) {
    bad(where.empty() ? key : where + "." + key, "wrong type");
  }
}

std::string get_string(const json& j, const char* key, const std::string& where) {
  const std::string field = where.empty() ? key : where + "." + key;
  if (!j.contains(key)) bad(field, "missing");
  if (!j[key].is_string()) bad(field, "must be a string");
  return j[key].get<std::string>();
}

Modality parse_modality(const std::string& s, const std::string& field) {
  if (s == "text") return Modality::kText;
  if (s == "vision") return Modality::kVision;
  bad(field, "modality must be \"text\" or \"vision\"");
}

}  // namespace

AnnotatorConfig annotator_from_json(const json& j, const std::string& where) {
  check_keys(j, where,
             {"id", "endpoint", "model", "modality", "max_retries", "temperature", "api_key_env",
              "initial_backoff_ms", "backoff_factor"});
  AnnotatorConfig a;
  a.annotator_id = get_string(j, "id", where);
  a.endpoint_url = get_string(j, "endpoint", where);
  a.model_name = get_string(j, "model", where);
  a.modality = parse_modality(get_string(j, "modality", where), where + ".modality");
  a.max_retries = get_or<int>(j, "max_retries", where, a.max_retries);
  a.temperature = get_or<double>(j, "temperature", where, a.temperature);
  a.api_key_env = get_or<std::string>(j, "api_key_env", where, "");
  a.initial_backoff =
      std::chrono::milliseconds(get_or<long>(j, "initial_backoff_ms", where, a.initial_backoff.count()));
  a.backoff_factor = get_or<double>(j, "backoff_factor", where, a.backoff_factor);
  if (a.max_retries < 1) bad(where + ".max_retries", "must be >= 1");
  if (a.initial_backoff.count() < 0) bad(where + ".initial_backoff_ms", "must be >= 0");
  if (!(a.backoff_factor >= 1.0)) bad(where + ".backoff_factor", "must be >= 1");
  if (!(a.temperature >= 0.0)) bad(where + ".temperature", "must be >= 0");
  return a;
}

void validate(const PipelineConfig& c) {
  if (c.annotators.empty()) bad("annotators", "at least one annotator is required");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < c.annotators.size(); ++i) {
    const auto& a = c.annotators[i];
    const std::string where = fmt::format("annotators[{}]", i);
    if (a.annotator_id.empty()) bad(where + ".id", "empty");
    if (!ids.insert(a.annotator_id).second) bad(where + ".id", "duplicate annotator id '" + a.annotator_id + "'");
    if (a.endpoint_url.rfind("stub:", 0) != 0 && a.endpoint_url.rfind("http://", 0) != 0 &&
        a.endpoint_url.rfind("https://", 0) != 0) {
      bad(where + ".endpoint", "must start with http://, https:// or stub:");
    }
  }
  if (c.token_budget < kMinTokenBudget) {
    bad("token_budget", fmt::format("must be >= {}, got {}", kMinTokenBudget, c.token_budget));
  }
  const auto& r = c.ratios;
  if (r.train < 0 || r.dev < 0 || r.test < 0) bad("split.ratios", "must be non-negative");
  if (std::fabs(r.train + r.dev + r.test - 1.0) > 1e-9) bad("split.ratios", "must sum to 1");
  double prev = 0.0;
  for (double e : c.bin_edges) {
    if (!(e > prev && e < 1.0)) bad("bin_edges", "must be strictly increasing inside (0, 1)");
    prev = e;
  }
  if (c.parallelism == 0) bad("parallelism", "must be >= 1");
  if (c.negative_cap && *c.negative_cap == 0) bad("merge.negative_cap", "must be >= 1 when set");
}

PipelineConfig config_from_json(const json& j, const fs::path& base_dir) {
  check_keys(j, "",
             {"corpus_dir", "cache_dir", "annotators", "token_budget", "tie_break", "bin_edges", "split",
              "parallelism", "merge", "filter_unanimous"});
  PipelineConfig c;
  c.base_dir = base_dir;
  auto resolve = [&](const std::string& p) { return p.empty() ? fs::path() : base_dir / p; };
  c.corpus_dir = resolve(get_or<std::string>(j, "corpus_dir", "", ""));
  c.cache_dir = resolve(get_or<std::string>(j, "cache_dir", "", "cache"));
  if (!j.contains("annotators") || !j["annotators"].is_array()) bad("annotators", "must be a list");
  for (std::size_t i = 0; i < j["annotators"].size(); ++i) {
    c.annotators.push_back(annotator_from_json(j["annotators"][i], fmt::format("annotators[{}]", i)));
  }
  c.token_budget = get_or<std::size_t>(j, "token_budget", "", c.token_budget);
  if (j.contains("tie_break")) {
    const auto& t = j["tie_break"];
    check_keys(t, "tie_break", {"claims", "evidence"});
    c.claim_tie_break = get_or<std::string>(t, "claims", "tie_break", c.claim_tie_break);
    c.evidence_tie_break = get_or<std::string>(t, "evidence", "tie_break", c.evidence_tie_break);
  }
  if (j.contains("bin_edges")) {
    auto edges = get_or<std::vector<double>>(j, "bin_edges", "", {});
    if (edges.size() != c.bin_edges.size()) bad("bin_edges", "must hold exactly 4 edges");
    std::copy(edges.begin(), edges.end(), c.bin_edges.begin());
  }
  if (j.contains("split")) {
    const auto& s = j["split"];
    check_keys(s, "split", {"ratios", "seed"});
    if (s.contains("ratios")) {
      auto r = get_or<std::vector<double>>(s, "ratios", "split", {});
      if (r.size() != 3) bad("split.ratios", "must hold [train, dev, test]");
      c.ratios = SplitRatios{r[0], r[1], r[2]};
    }
    c.seed = get_or<std::uint64_t>(s, "seed", "split", c.seed);
  }
  c.parallelism = get_or<std::size_t>(j, "parallelism", "", c.parallelism);
  if (j.contains("merge")) {
    const auto& m = j["merge"];
    check_keys(m, "merge", {"max_gap", "negatives", "negative_cap"});
    c.merge_max_gap = get_or<std::size_t>(m, "max_gap", "merge", c.merge_max_gap);
    const auto neg = get_or<std::string>(m, "negatives", "merge", "candidates");
    if (neg == "candidates") {
      c.negatives = NegativePolicy::kCandidates;
    } else if (neg == "exhaustive") {
      c.negatives = NegativePolicy::kExhaustive;
    } else {
      bad("merge.negatives", "must be \"candidates\" or \"exhaustive\"");
    }
    if (m.contains("negative_cap") && !m["negative_cap"].is_null()) {
      c.negative_cap = get_or<std::size_t>(m, "negative_cap", "merge", 0);
    }
  }
  c.filter_unanimous = get_or<bool>(j, "filter_unanimous", "", c.filter_unanimous);
  validate(c);
  return c;
}

json config_to_json(const PipelineConfig& c) {
  json annotators = json::array();
  for (const auto& a : c.annotators) {
    annotators.push_back({{"id", a.annotator_id},
                          {"endpoint", a.endpoint_url},
                          {"model", a.model_name},
                          {"modality", to_string(a.modality)},
                          {"max_retries", a.max_retries},
                          {"temperature", a.temperature},
                          {"api_key_env", a.api_key_env},
                          {"initial_backoff_ms", a.initial_backoff.count()},
                          {"backoff_factor", a.backoff_factor}});
  }
  json j{{"corpus_dir", c.corpus_dir.string()},
         {"cache_dir", c.cache_dir.string()},
         {"annotators", annotators},
         {"token_budget", c.token_budget},
         {"tie_break", {{"claims", c.claim_tie_break}, {"evidence", c.evidence_tie_break}}},
         {"bin_edges", c.bin_edges},
         {"split", {{"ratios", {c.ratios.train, c.ratios.dev, c.ratios.test}}, {"seed", c.seed}}},
         {"parallelism", c.parallelism},
         {"merge",
          {{"max_gap", c.merge_max_gap},
           {"negatives", c.negatives == NegativePolicy::kCandidates ? "candidates" : "exhaustive"},
           {"negative_cap", c.negative_cap ? json(*c.negative_cap) : json(nullptr)}}},
         {"filter_unanimous", c.filter_unanimous}};
  return j;
}

PipelineConfig load_config(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorKind::kIo, "config file not found: " + path.string(), "--config");
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, std::string("config is not valid JSON: ") + e.what(), "--config");
  }
  return config_from_json(j, path.parent_path());
}

}  // namespace rigourate
