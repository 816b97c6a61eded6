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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rigourate/dataset.hpp"
#include "rigourate/ireval.hpp"
#include "rigourate/regeval.hpp"
#include "rigourate/stats.hpp"

namespace rigourate {

// Plain-text column table. The first column is left aligned, the rest right
// aligned; widths count UTF-8 code points. Section rows span the table.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  void add_section(std::string title);
  std::string render() const;

 private:
  struct Row {
    std::vector<std::string> cells;
    bool section = false;
  };
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

// "1,234,567".
std::string group_thousands(std::size_t n);
// "+0.0160" / "−0.0191" (U+2212 minus); zero is "+".
std::string signed_fixed(double v, int decimals);
// Four decimals, or "—" when missing or not finite.
std::string fixed_or_dash(std::optional<double> v, int decimals);
// "< 0.01" below 0.01, otherwise four decimals; "—" for NaN.
std::string format_p_value(double p);

struct RetrievalRow {
  std::string model;
  RetrievalReport report;
};

struct RegressionRow {
  std::string model;
  RegressionReport report;
};

std::string format_dataset_table(const DatasetStats& stats);
std::string format_evidence_breakdown(const DatasetStats& stats);
std::string format_retrieval_table(const std::vector<RetrievalRow>& rows);
std::string format_regression_table(const std::vector<RegressionRow>& rows);
std::string format_agreement_table(const std::vector<AgreementRow>& rows);
std::string format_loo_shift_table(const std::vector<LooShiftRow>& rows);
std::string format_shift_table(const ShiftReport& report);

// Evaluation files hold {"rows": [{"model": ..., ...report fields}]}; a
// re-evaluated model replaces its row.
std::vector<RetrievalRow> read_retrieval_rows(const std::filesystem::path& path);
void upsert_retrieval_row(const std::filesystem::path& path, const RetrievalRow& row);
std::vector<RegressionRow> read_regression_rows(const std::filesystem::path& path);
void upsert_regression_row(const std::filesystem::path& path, const RegressionRow& row);

// File names inside a run directory.
namespace run_files {
inline constexpr std::string_view kDatasetStats = "dataset_stats.json";
inline constexpr std::string_view kStats = "stats.json";
inline constexpr std::string_view kRetrievalEval = "retrieval_eval.json";
inline constexpr std::string_view kOverstatementEval = "overstatement_eval.json";
inline constexpr std::string_view kReport = "report.txt";
}  // namespace run_files

// Renders every table whose source file exists in `run_dir`, in a fixed
// order. Reads files only. Throws Error(kDependency) when none exist.
std::string render_report(const std::filesystem::path& run_dir);

}  // namespace rigourate
