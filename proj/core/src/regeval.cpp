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

#include "rigourate/regeval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "rigourate/error.hpp"
#include "rigourate/jsonl.hpp"
#include "rigourate/stats.hpp"

namespace rigourate {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b, std::size_t min_n) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kPrecondition,
                fmt::format("sample lengths differ ({} vs {})", a.size(), b.size()), "samples");
  }
  if (a.size() < min_n) {
    throw Error(ErrorKind::kPrecondition, fmt::format("need at least {} values", min_n), "samples");
  }
}

double sum_mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

}  // namespace

CccResult ccc(std::span<const double> pred, std::span<const double> ref) {
  check_lengths(pred, ref, 2);
  const double mp = sum_mean(pred);
  const double mr = sum_mean(ref);
  double spp = 0.0, srr = 0.0, spr = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double dp = pred[i] - mp;
    const double dr = ref[i] - mr;
    spp += dp * dp;
    srr += dr * dr;
    spr += dp * dr;
  }
  const double shift = mp - mr;
  const double denom = spp + srr + static_cast<double>(pred.size()) * shift * shift;
  if (denom == 0.0) return CccResult{1.0, true};
  return CccResult{2.0 * spr / denom, false};
}

double mae(std::span<const double> pred, std::span<const double> ref) {
  check_lengths(pred, ref, 1);
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) s += std::fabs(pred[i] - ref[i]);
  return s / static_cast<double>(pred.size());
}

RegressionReport evaluate_predictions(const PredictionSet& set) {
  std::vector<std::string> problems;
  for (const auto& [k, v] : set.predicted) {
    if (!set.reference.contains(k)) problems.push_back(k + " (no reference)");
  }
  for (const auto& [k, v] : set.reference) {
    if (!set.predicted.contains(k)) problems.push_back(k + " (no prediction)");
  }
  if (!problems.empty()) {
    std::string msg = "prediction and reference keys differ:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw Error(ErrorKind::kValidation, msg, "claim_id");
  }

  RegressionReport report;
  std::vector<double> pred, ref;
  for (const auto& [claim, r] : set.reference) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw Error(ErrorKind::kValidation, fmt::format("reference for '{}' outside [0, 1]: {}", claim, r),
                  claim);
    }
    double p = set.predicted.at(claim);
    if (std::isnan(p)) {
      throw Error(ErrorKind::kValidation, fmt::format("prediction for '{}' is NaN", claim), claim);
    }
    if (p < 0.0 || p > 1.0) {
      const double clamped = std::clamp(p, 0.0, 1.0);
      report.warnings.push_back(fmt::format("clamped prediction for '{}' from {} to {}", claim, p, clamped));
      p = clamped;
    }
    pred.push_back(p);
    ref.push_back(r);
  }
  report.n = pred.size();
  report.mae = mae(pred, ref);
  if (pred.size() >= 2) {
    report.ccc = ccc(pred, ref);
    report.pearson = pearson(pred, ref);
  }
  return report;
}

std::map<std::string, double> parse_prediction_file(std::string_view text) {
  std::map<std::string, double> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string claim, score, extra;
    if (!(fields >> claim) || claim[0] == '#') continue;
    if (!(fields >> score) || (fields >> extra)) {
      throw Error(ErrorKind::kParse, fmt::format("line {}: expected 'claim_id score'", line_no),
                  fmt::format("line {}", line_no));
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(score.data(), score.data() + score.size(), v);
    if (ec != std::errc() || ptr != score.data() + score.size()) {
      throw Error(ErrorKind::kParse, fmt::format("line {}: bad score '{}'", line_no, score),
                  fmt::format("line {}", line_no));
    }
    if (!out.emplace(claim, v).second) {
      throw Error(ErrorKind::kParse, fmt::format("line {}: duplicate claim '{}'", line_no, claim),
                  fmt::format("line {}", line_no));
    }
  }
  return out;
}

std::map<std::string, double> read_prediction_file(const std::filesystem::path& path) {
  return parse_prediction_file(read_file(path));
}

}  // namespace rigourate
