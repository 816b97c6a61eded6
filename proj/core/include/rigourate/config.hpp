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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rigourate/annotator.hpp"
#include "rigourate/evidence.hpp"
#include "rigourate/scoring.hpp"

namespace rigourate {

struct SplitRatios {
  double train = 0.61;
  double dev = 0.30;
  double test = 0.09;
};

// Labels used when collapsing evidence votes to a per-unit label for the
// leave-one-out agreement analysis.
inline constexpr std::string_view kSelected = "selected";
inline constexpr std::string_view kNotSelected = "not_selected";

struct PipelineConfig {
  // Relative paths in the file resolve against the config file's directory.
  std::filesystem::path corpus_dir;
  std::filesystem::path cache_dir;
  std::vector<AnnotatorConfig> annotators;
  std::size_t token_budget = kDefaultTokenBudget;
  std::string claim_tie_break = std::string(kNotOriginalStatement);
  std::string evidence_tie_break = std::string(kNotSelected);
  BinEdges bin_edges = kDefaultBinEdges;
  SplitRatios ratios;
  std::uint64_t seed = 13;
  std::size_t parallelism = 1;
  std::size_t merge_max_gap = 0;
  NegativePolicy negatives = NegativePolicy::kCandidates;
  std::optional<std::size_t> negative_cap;
  bool filter_unanimous = true;
  // Directory stub rule files and relative paths resolve against.
  std::filesystem::path base_dir;
};

inline constexpr std::size_t kMinTokenBudget = 64;

// Throws Error(kValidation) naming the field: no annotators, duplicate
// annotator ids, budget below 64, ratios negative or not summing to 1,
// bin edges not strictly increasing inside (0, 1), parallelism 0.
void validate(const PipelineConfig& config);

PipelineConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
// Paths are written as resolved, so reading the result back with any base
// directory gives the same config.
nlohmann::json config_to_json(const PipelineConfig& config);
PipelineConfig load_config(const std::filesystem::path& path);

AnnotatorConfig annotator_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace rigourate
