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

// Helpers for tests that run the pipeline over the shipped fixture corpus.
#pragma once

#include <atomic>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rigourate/jsonl.hpp"
#include "rigourate/pipeline.hpp"

namespace testing_support {

namespace fs = std::filesystem;

inline fs::path fixtures_dir() { return fs::path(RIGOURATE_FIXTURES_DIR); }
inline fs::path golden_dir() { return fs::path(RIGOURATE_GOLDEN_DIR); }

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "rigourate") {
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            (tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter.fetch_add(1)));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// Copies the fixture corpus, config and stub rules into `dest` so relative
// paths resolve there and the response cache stays out of the source tree.
inline void copy_fixtures(const fs::path& dest) {
  fs::copy(fixtures_dir(), dest, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
}

inline const std::vector<std::string>& full_pipeline() {
  static const std::vector<std::string> stages = {"ingest", "extract-claims", "annotate-evidence", "score",
                                                  "aggregate", "stats", "split", "export", "report"};
  return stages;
}

struct StageResult {
  int code = 0;
  std::string out;
  std::string err;
};

inline StageResult run(const std::string& stage, rigourate::RunOptions options) {
  std::ostringstream out, err;
  StageResult r;
  r.code = rigourate::run_subcommand(stage, options, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

inline rigourate::RunOptions options_for(const fs::path& work, const std::string& out = "run") {
  rigourate::RunOptions o;
  o.config = work / "pipeline.json";
  o.out = work / out;
  return o;
}

// Runs every stage; returns the first failing stage's result, or the last.
inline StageResult run_all(const fs::path& work, const std::string& out = "run") {
  StageResult last;
  for (const auto& stage : full_pipeline()) {
    last = run(stage, options_for(work, out));
    if (last.code != 0) {
      last.err = stage + ": " + last.err;
      return last;
    }
  }
  return last;
}

// Files compared against the golden copies, relative to the run directory.
inline const std::vector<std::string>& golden_files() {
  static const std::vector<std::string> files = {
      "labelled_sentences.jsonl",   "claims.jsonl",
      "evidence.jsonl",             "scores.jsonl",
      "soft_labels.jsonl",          "stats.json",
      "split.json",                 "dataset_stats.json",
      "report.txt",                 "exports/retrieval_train.jsonl",
      "exports/retrieval_dev.jsonl", "exports/retrieval_test.jsonl",
      "exports/scorer_train.jsonl", "exports/scorer_dev.jsonl",
      "exports/scorer_test.jsonl",  "exports/qrels_train.txt",
      "exports/qrels_dev.txt",      "exports/qrels_test.txt",
      "exports/manifest.json",
  };
  return files;
}

}  // namespace testing_support
