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

#include "rigourate/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "rigourate/error.hpp"
#include "rigourate/jsonl.hpp"
#include "rigourate/records.hpp"

namespace rigourate {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::size_t display_width(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80 ? 1 : 0;
  return n;
}

std::string pad(const std::string& s, std::size_t width, bool left) {
  const std::size_t w = display_width(s);
  if (w >= width) return s;
  const std::string fill(width - w, ' ');
  return left ? s + fill : fill + s;
}

constexpr std::string_view kDash = "—";
constexpr std::string_view kMinus = "−";

}  // namespace

TextTable::TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

void TextTable::add_row(std::vector<std::string> cells) {
  cells.resize(header_.size());
  rows_.push_back(Row{std::move(cells), false});
}

void TextTable::add_section(std::string title) { rows_.push_back(Row{{std::move(title)}, true}); }

std::string TextTable::render() const {
  std::vector<std::size_t> widths(header_.size(), 0);
  for (std::size_t c = 0; c < header_.size(); ++c) widths[c] = display_width(header_[c]);
  for (const auto& row : rows_) {
    if (row.section) continue;
    for (std::size_t c = 0; c < row.cells.size(); ++c) widths[c] = std::max(widths[c], display_width(row.cells[c]));
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out += "  ";
      out += pad(cells[c], widths[c], c == 0);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  std::size_t total = 0;
  for (std::size_t w : widths) total += w;
  total += 2 * (widths.size() - 1);
  std::string rule;
  for (std::size_t i = 0; i < total; ++i) rule += "-";

  std::string out = line(header_);
  out += rule + "\n";
  for (const auto& row : rows_) {
    out += row.section ? row.cells.front() + "\n" : line(row.cells);
  }
  return out;
}

std::string group_thousands(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

std::string signed_fixed(double v, int decimals) {
  if (!std::isfinite(v)) return std::string(kDash);
  std::string body = fmt::format("{:.{}f}", std::fabs(v), decimals);
  // A value that rounds to zero is shown as +0.000...
  const bool zero = body.find_first_not_of("0.") == std::string::npos;
  return (v < 0 && !zero ? std::string(kMinus) : std::string("+")) + body;
}

std::string fixed_or_dash(std::optional<double> v, int decimals) {
  if (!v || !std::isfinite(*v)) return std::string(kDash);
  return fmt::format("{:.{}f}", *v, decimals);
}

std::string format_p_value(double p) {
  if (!std::isfinite(p)) return std::string(kDash);
  if (p < 0.01) return "< 0.01";
  return fmt::format("{:.4f}", p);
}

std::string format_dataset_table(const DatasetStats& stats) {
  TextTable table({"Split", "Train", "Dev", "Test", "Total"});
  const SplitCounts total = stats.total();
  auto row = [&](std::string name, auto field) {
    table.add_row({std::move(name), group_thousands(field(stats.at(Split::kTrain))),
                   group_thousands(field(stats.at(Split::kDev))), group_thousands(field(stats.at(Split::kTest))),
                   group_thousands(field(total))});
  };
  row("Paper IDs", [](const SplitCounts& c) { return c.papers; });
  row("Claims", [](const SplitCounts& c) { return c.claims; });
  row("Evidence", [](const SplitCounts& c) { return c.evidence(); });
  row("Scores", [](const SplitCounts& c) { return c.scores; });
  return table.render();
}

std::string format_evidence_breakdown(const DatasetStats& stats) {
  TextTable table({"Evidence Type", "Train", "Dev", "Test", "Total"});
  const SplitCounts total = stats.total();
  auto row = [&](std::string name, auto field) {
    table.add_row({std::move(name), group_thousands(field(stats.at(Split::kTrain))),
                   group_thousands(field(stats.at(Split::kDev))), group_thousands(field(stats.at(Split::kTest))),
                   group_thousands(field(total))});
  };
  row("Supporting", [](const SplitCounts& c) { return c.supporting(); });
  row("  TEXT", [](const SplitCounts& c) { return c.supporting_text; });
  row("  IMAGE", [](const SplitCounts& c) { return c.supporting_image; });
  row("Not-supporting", [](const SplitCounts& c) { return c.not_supporting(); });
  row("  TEXT", [](const SplitCounts& c) { return c.not_supporting_text; });
  row("  IMAGE", [](const SplitCounts& c) { return c.not_supporting_image; });
  return table.render();
}

std::string format_retrieval_table(const std::vector<RetrievalRow>& rows) {
  std::vector<int> ks;
  for (const auto& r : rows) {
    for (const auto& [k, v] : r.report.recall) ks.push_back(k);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  std::vector<std::string> header = {"Model", "MAP", "MRR"};
  for (int k : ks) header.push_back(fmt::format("R@{}", k));
  for (int k : ks) header.push_back(fmt::format("N@{}", k));
  TextTable table(header);
  auto pct = [](const std::map<int, double>& m, int k) {
    auto it = m.find(k);
    return it == m.end() ? std::string(kDash) : fmt::format("{:.2f}", 100.0 * it->second);
  };
  for (const auto& r : rows) {
    std::vector<std::string> cells = {r.model, fmt::format("{:.2f}", 100.0 * r.report.map),
                                      fmt::format("{:.2f}", 100.0 * r.report.mrr)};
    for (int k : ks) cells.push_back(pct(r.report.recall, k));
    for (int k : ks) cells.push_back(pct(r.report.ndcg, k));
    table.add_row(std::move(cells));
  }
  return table.render();
}

std::string format_regression_table(const std::vector<RegressionRow>& rows) {
  TextTable table({"Model", "CCC", "MAE", "ρ"});
  for (const auto& r : rows) {
    table.add_row({r.model, fixed_or_dash(r.report.ccc.value, 3), fixed_or_dash(r.report.mae, 3),
                   fixed_or_dash(r.report.pearson, 3)});
  }
  return table.render();
}

std::string format_agreement_table(const std::vector<AgreementRow>& rows) {
  TextTable table({"Excluded Model", "Own", "Text", "Image"});
  for (const auto& r : rows) {
    table.add_row({r.excluded, fixed_or_dash(r.own, 4), fixed_or_dash(r.text, 4), fixed_or_dash(r.image, 4)});
  }
  return table.render();
}

std::string format_loo_shift_table(const std::vector<LooShiftRow>& rows) {
  TextTable table({"Model", "Δ Mean", "MAD", "Welch p"});
  for (const auto& r : rows) {
    table.add_row({r.excluded, signed_fixed(r.delta_mean, 4), fixed_or_dash(r.mad, 4), format_p_value(r.welch.p)});
  }
  return table.render();
}

std::string format_shift_table(const ShiftReport& report) {
  TextTable table({"Initial score band", "Δμ", "median Δ", "mean |Δ|", "↑ / ↓ / = (%)"});
  auto shares = [](const ShiftStats& s) {
    return fmt::format("{:.1f} / {:.1f} / {:.1f}", s.pct_up, s.pct_down, s.pct_same);
  };
  for (const auto& b : report.bands) {
    const auto& s = b.stats;
    if (s.n == 0) {
      table.add_row({b.band.label, std::string(kDash), std::string(kDash), std::string(kDash), std::string(kDash)});
      continue;
    }
    table.add_row({b.band.label, signed_fixed(s.delta_mean, 4), signed_fixed(s.delta_median, 4),
                   fmt::format("{:.4f}", s.mean_abs_delta), shares(s)});
  }
  std::string out = table.render();
  const auto& o = report.overall;
  out += fmt::format("Overall: n = {}, Δμ = {}, median Δ = {}, ↑ / ↓ / = (%) = {}, r = {}\n", o.n,
                     signed_fixed(o.delta_mean, 3), signed_fixed(o.delta_median, 3), shares(o),
                     fixed_or_dash(report.pearson_r, 2));
  return out;
}

namespace {

template <typename Row, typename Report>
std::vector<Row> read_rows(const fs::path& path) {
  const json j = read_json(path);
  std::vector<Row> rows;
  try {
    for (const auto& r : j.at("rows")) {
      rows.push_back(Row{r.at("model").get<std::string>(), r.get<Report>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, path.filename().string() + ": " + e.what(), path.filename().string());
  }
  return rows;
}

template <typename Row>
void upsert(const fs::path& path, const Row& row, std::vector<Row> rows) {
  auto it = std::find_if(rows.begin(), rows.end(), [&](const Row& r) { return r.model == row.model; });
  if (it != rows.end()) {
    *it = row;
  } else {
    rows.push_back(row);
  }
  json out = json::array();
  for (const auto& r : rows) {
    json item = r.report;
    item["model"] = r.model;
    out.push_back(std::move(item));
  }
  write_json(path, json{{"rows", out}});
}

}  // namespace

std::vector<RetrievalRow> read_retrieval_rows(const fs::path& path) {
  return read_rows<RetrievalRow, RetrievalReport>(path);
}

void upsert_retrieval_row(const fs::path& path, const RetrievalRow& row) {
  upsert(path, row, fs::exists(path) ? read_retrieval_rows(path) : std::vector<RetrievalRow>{});
}

std::vector<RegressionRow> read_regression_rows(const fs::path& path) {
  return read_rows<RegressionRow, RegressionReport>(path);
}

void upsert_regression_row(const fs::path& path, const RegressionRow& row) {
  upsert(path, row, fs::exists(path) ? read_regression_rows(path) : std::vector<RegressionRow>{});
}

std::string render_report(const fs::path& run_dir) {
  std::string out;
  auto section = [&out](std::string_view title, const std::string& body) {
    if (!out.empty()) out += "\n";
    out += fmt::format("== {} ==\n{}", title, body);
  };
  const fs::path dataset = run_dir / run_files::kDatasetStats;
  if (fs::exists(dataset)) {
    const DatasetStats stats = dataset_stats_from_json(read_json(dataset));
    section("Dataset statistics", format_dataset_table(stats));
    section("Evidence breakdown", format_evidence_breakdown(stats));
  }
  const fs::path retrieval = run_dir / run_files::kRetrievalEval;
  if (fs::exists(retrieval)) section("Evidence retrieval", format_retrieval_table(read_retrieval_rows(retrieval)));
  const fs::path regression = run_dir / run_files::kOverstatementEval;
  if (fs::exists(regression)) {
    section("Overstatement detection", format_regression_table(read_regression_rows(regression)));
  }
  const fs::path stats_path = run_dir / run_files::kStats;
  if (fs::exists(stats_path)) {
    const json j = read_json(stats_path);
    if (j.contains("agreement")) {
      section("Leave-one-out consensus agreement (Krippendorff's alpha)",
              format_agreement_table(records_from<AgreementRow>(j["agreement"].get<std::vector<json>>(), "agreement")));
    }
    if (j.contains("loo_shift")) {
      section("Leave-one-out score shift",
              format_loo_shift_table(records_from<LooShiftRow>(j["loo_shift"].get<std::vector<json>>(), "loo_shift")));
    }
    if (j.contains("review_shift") && !j["review_shift"].is_null()) {
      section("Review-informed score shift",
              format_shift_table(record_from<ShiftReport>(j["review_shift"], "review_shift")));
    }
  }
  if (out.empty()) {
    throw Error(ErrorKind::kDependency,
                "nothing to report in " + run_dir.filename().string() +
                    ": run 'stats', 'export', 'eval-retrieval' or 'eval-overstatement' first",
                "report");
  }
  return out;
}

}  // namespace rigourate
