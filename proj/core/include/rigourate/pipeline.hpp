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
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace rigourate {

struct RunOptions {
  std::optional<std::filesystem::path> config;
  // Overrides the config's corpus directory.
  std::optional<std::filesystem::path> papers;
  std::optional<std::string> split;
  std::filesystem::path out = "run";
  std::vector<int> ks;
  // Overrides the config's split seed.
  std::optional<std::uint64_t> seed;
  // eval-retrieval inputs; qrels default to the exported split file.
  std::optional<std::filesystem::path> run_file;
  std::optional<std::filesystem::path> qrels_file;
  // eval-overstatement inputs; the reference defaults to the split's soft
  // labels.
  std::optional<std::filesystem::path> predictions;
  std::optional<std::filesystem::path> reference;
  // Row label in the evaluation tables; defaults to the input file stem.
  std::optional<std::string> model;
};

const std::vector<std::string_view>& subcommands();

// Runs one stage against the run directory. Human-readable output goes to
// `out`; errors are reported on `err` as "error[<kind>] <field>: <message>".
// Returns 0 on success, 2 for usage errors, 1 otherwise.
int run_subcommand(std::string_view name, const RunOptions& options, std::ostream& out, std::ostream& err);

// Same, but lets Error propagate.
void run_stage(std::string_view name, const RunOptions& options, std::ostream& out);

// Run-directory file names.
namespace stage_files {
inline constexpr std::string_view kPapers = "papers.jsonl";
inline constexpr std::string_view kIngest = "ingest.json";
inline constexpr std::string_view kLabelled = "labelled_sentences.jsonl";
inline constexpr std::string_view kClaims = "claims.jsonl";
inline constexpr std::string_view kEvidence = "evidence.jsonl";
inline constexpr std::string_view kScores = "scores.jsonl";
inline constexpr std::string_view kSoftLabels = "soft_labels.jsonl";
inline constexpr std::string_view kSplit = "split.json";
inline constexpr std::string_view kManifest = "manifest.json";
inline constexpr std::string_view kAuditDir = "audit";
inline constexpr std::string_view kExportDir = "exports";
}  // namespace stage_files

}  // namespace rigourate
