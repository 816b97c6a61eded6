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

#include "rigourate/ireval.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "rigourate/error.hpp"
#include "rigourate/jsonl.hpp"

namespace rigourate {

namespace {

void check_k(int k) {
  if (k < 1) throw Error(ErrorKind::kPrecondition, fmt::format("cutoff k must be >= 1, got {}", k), "k");
}

double discount(std::size_t rank) { return 1.0 / std::log2(static_cast<double>(rank) + 1.0); }

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view s, std::size_t line_no, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::kParse, fmt::format("line {}: bad {} '{}'", line_no, what, s),
                fmt::format("line {}", line_no));
  }
  return v;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto line = text.substr(pos, end - pos);
    auto f = fields_of(line);
    if (!f.empty() && f[0][0] != '#') fn(f, line_no);
    pos = end + 1;
  }
}

}  // namespace

double average_precision(std::span<const std::string> ranking, const std::set<std::string>& relevant) {
  if (relevant.empty()) return 0.0;
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (relevant.contains(ranking[i])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(relevant.size());
}

double reciprocal_rank(std::span<const std::string> ranking, const std::set<std::string>& relevant) {
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (relevant.contains(ranking[i])) return 1.0 / static_cast<double>(i + 1);
  }
  return 0.0;
}

double recall_at_k(std::span<const std::string> ranking, const std::set<std::string>& relevant, int k) {
  check_k(k);
  if (relevant.empty()) return 0.0;
  const std::size_t top = std::min(ranking.size(), static_cast<std::size_t>(k));
  std::size_t hits = 0;
  for (std::size_t i = 0; i < top; ++i) hits += relevant.contains(ranking[i]) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(relevant.size());
}

double ndcg_at_k(std::span<const std::string> ranking, const std::set<std::string>& relevant, int k) {
  check_k(k);
  if (relevant.empty()) return 0.0;
  const std::size_t top = std::min(ranking.size(), static_cast<std::size_t>(k));
  double dcg = 0.0;
  for (std::size_t i = 0; i < top; ++i) {
    if (relevant.contains(ranking[i])) dcg += discount(i + 1);
  }
  double ideal = 0.0;
  const std::size_t ideal_n = std::min(relevant.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < ideal_n; ++i) ideal += discount(i + 1);
  return dcg / ideal;
}

namespace {

void check_coverage(const Runs& runs, const Qrels& qrels) {
  std::vector<std::string> missing;
  for (const auto& [claim, entry] : qrels) {
    if (!runs.contains(claim)) missing.push_back(claim);
  }
  if (missing.empty()) return;
  std::string list;
  for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
  throw Error(ErrorKind::kPrecondition, "qrels claims missing from runs: " + list, "runs");
}

}  // namespace

double mrr(const Runs& runs, const Qrels& qrels) {
  check_coverage(runs, qrels);
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [claim, entry] : qrels) {
    if (entry.relevant.empty()) continue;
    sum += reciprocal_rank(runs.at(claim).ranking, entry.relevant);
    ++n;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

RetrievalReport evaluate_run(const Runs& runs, const Qrels& qrels, const std::vector<int>& ks) {
  for (int k : ks) check_k(k);
  check_coverage(runs, qrels);
  RetrievalReport report;
  for (const auto& [claim, run] : runs) {
    if (!qrels.contains(claim)) ++report.runs_without_qrels;
  }
  double ap = 0.0, rr = 0.0;
  std::map<int, double> recall, ndcg;
  for (int k : ks) recall[k] = ndcg[k] = 0.0;
  for (const auto& [claim, entry] : qrels) {
    if (entry.relevant.empty()) {
      ++report.claims_without_relevant;
      continue;
    }
    const auto& ranking = runs.at(claim).ranking;
    ap += average_precision(ranking, entry.relevant);
    rr += reciprocal_rank(ranking, entry.relevant);
    for (int k : ks) {
      recall[k] += recall_at_k(ranking, entry.relevant, k);
      ndcg[k] += ndcg_at_k(ranking, entry.relevant, k);
    }
    ++report.claims_evaluated;
  }
  const double n = static_cast<double>(report.claims_evaluated);
  if (report.claims_evaluated > 0) {
    report.map = ap / n;
    report.mrr = rr / n;
  }
  for (int k : ks) {
    report.recall[k] = report.claims_evaluated > 0 ? recall[k] / n : 0.0;
    report.ndcg[k] = report.claims_evaluated > 0 ? ndcg[k] / n : 0.0;
  }
  return report;
}

Runs parse_run(std::string_view text) {
  struct Row {
    std::string evidence_id;
    long rank;
    double score;
    std::size_t order;
  };
  std::map<std::string, std::vector<Row>> rows;
  std::size_t order = 0;
  for_each_line(text, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    if (f.size() != 4) {
      throw Error(ErrorKind::kParse,
                  fmt::format("line {}: expected 'claim_id evidence_id rank score', got {} fields",
                              line_no, f.size()),
                  fmt::format("line {}", line_no));
    }
    rows[std::string(f[0])].push_back(Row{std::string(f[1]), parse_number<long>(f[2], line_no, "rank"),
                                          parse_number<double>(f[3], line_no, "score"), order++});
  });
  Runs runs;
  for (auto& [claim, list] : rows) {
    std::stable_sort(list.begin(), list.end(), [](const Row& a, const Row& b) { return a.rank < b.rank; });
    RankedRun run;
    run.claim_id = claim;
    std::set<std::string> seen;
    for (const auto& r : list) {
      if (!seen.insert(r.evidence_id).second) {
        throw Error(ErrorKind::kParse,
                    fmt::format("duplicate evidence '{}' in run for claim '{}'", r.evidence_id, claim),
                    claim);
      }
      run.ranking.push_back(r.evidence_id);
      run.scores.push_back(r.score);
    }
    runs.emplace(claim, std::move(run));
  }
  return runs;
}

Runs read_run_file(const std::filesystem::path& path) { return parse_run(read_file(path)); }

Qrels parse_qrels(std::string_view text) {
  Qrels qrels;
  for_each_line(text, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    if (f.size() != 3) {
      throw Error(ErrorKind::kParse,
                  fmt::format("line {}: expected 'claim_id evidence_id relevance', got {} fields",
                              line_no, f.size()),
                  fmt::format("line {}", line_no));
    }
    const int rel = parse_number<int>(f[2], line_no, "relevance");
    if (rel != 0 && rel != 1) {
      throw Error(ErrorKind::kParse, fmt::format("line {}: relevance must be 0 or 1", line_no),
                  fmt::format("line {}", line_no));
    }
    auto& entry = qrels[std::string(f[0])];
    std::string id(f[1]);
    if (!entry.judged.insert(id).second) {
      throw Error(ErrorKind::kParse,
                  fmt::format("line {}: evidence '{}' judged twice for claim '{}'", line_no, id, f[0]),
                  fmt::format("line {}", line_no));
    }
    if (rel == 1) entry.relevant.insert(id);
  });
  return qrels;
}

Qrels read_qrels_file(const std::filesystem::path& path) { return parse_qrels(read_file(path)); }

std::string format_run(const Runs& runs) {
  std::string out;
  for (const auto& [claim, run] : runs) {
    for (std::size_t i = 0; i < run.ranking.size(); ++i) {
      const double score = i < run.scores.size() ? run.scores[i] : 0.0;
      out += fmt::format("{} {} {} {:.6f}\n", claim, run.ranking[i], i + 1, score);
    }
  }
  return out;
}

std::string format_qrels(const Qrels& qrels) {
  std::string out;
  for (const auto& [claim, entry] : qrels) {
    for (const auto& id : entry.judged) {
      out += fmt::format("{} {} {}\n", claim, id, entry.relevant.contains(id) ? 1 : 0);
    }
  }
  return out;
}

}  // namespace rigourate
