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

#include "rigourate/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "rigourate/claims.hpp"
#include "rigourate/error.hpp"
#include "rigourate/special_functions.hpp"

namespace rigourate {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

ReliabilityMatrix::ReliabilityMatrix(std::vector<std::string> item_ids,
                                     std::vector<std::string> annotator_ids, MeasurementLevel lvl)
    : items(std::move(item_ids)),
      annotators(std::move(annotator_ids)),
      values(items.size(), std::vector<std::optional<double>>(annotators.size())),
      level(lvl) {}

void ReliabilityMatrix::set(std::size_t item, std::size_t annotator, double value) {
  values.at(item).at(annotator) = value;
}

AlphaResult krippendorff_alpha(const ReliabilityMatrix& matrix) {
  if (matrix.annotators.size() < 2) {
    throw Error(ErrorKind::kPrecondition, "alpha needs at least two annotators", "annotators");
  }
  std::vector<std::vector<double>> units;
  std::set<double> category_set;
  for (const auto& row : matrix.values) {
    std::vector<double> unit;
    for (const auto& cell : row) {
      if (cell) unit.push_back(*cell);
    }
    if (unit.size() < 2) continue;
    category_set.insert(unit.begin(), unit.end());
    units.push_back(std::move(unit));
  }
  if (units.empty()) {
    throw Error(ErrorKind::kPrecondition, "alpha needs at least one item with two values", "values");
  }

  const std::vector<double> categories(category_set.begin(), category_set.end());
  const std::size_t k = categories.size();
  auto index_of = [&categories](double v) {
    return static_cast<std::size_t>(std::lower_bound(categories.begin(), categories.end(), v) -
                                    categories.begin());
  };

  // Coincidence matrix.
  std::vector<std::vector<double>> coincidence(k, std::vector<double>(k, 0.0));
  for (const auto& unit : units) {
    const double weight = 1.0 / static_cast<double>(unit.size() - 1);
    std::vector<std::size_t> counts(k, 0);
    for (double v : unit) ++counts[index_of(v)];
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t d = 0; d < k; ++d) {
        if (counts[d] == 0) continue;
        const double pairs = c == d ? static_cast<double>(counts[c] * (counts[c] - 1))
                                    : static_cast<double>(counts[c] * counts[d]);
        coincidence[c][d] += pairs * weight;
      }
    }
  }
  std::vector<double> marginal(k, 0.0);
  double n = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) marginal[c] += coincidence[c][d];
    n += marginal[c];
  }

  auto distance = [&](std::size_t c, std::size_t d) -> double {
    if (c == d) return 0.0;
    if (matrix.level == MeasurementLevel::kNominal) return 1.0;
    const std::size_t lo = std::min(c, d);
    const std::size_t hi = std::max(c, d);
    double s = 0.0;
    for (std::size_t g = lo; g <= hi; ++g) s += marginal[g];
    s -= 0.5 * (marginal[lo] + marginal[hi]);
    return s * s;
  };

  double observed = 0.0;
  double expected = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) {
      const double delta = distance(c, d);
      observed += coincidence[c][d] * delta;
      expected += marginal[c] * marginal[d] * delta;
    }
  }

  AlphaResult result;
  result.pairable = n;
  if (expected == 0.0) {
    result.alpha = 1.0;
    result.degenerate = true;
    return result;
  }
  result.alpha = 1.0 - (n - 1.0) * observed / expected;
  return result;
}

AlphaResult leave_one_out_agreement(const ItemVotes& votes, std::string_view excluded,
                                    std::string_view tie_break) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::set<std::string> label_set;
  for (const auto& item : votes) {
    if (item.empty()) continue;
    Votes full(item.begin(), item.end());
    Votes reduced = full;
    reduced.erase(std::string(excluded));
    if (reduced.empty()) continue;
    auto a = majority_vote(full, tie_break);
    auto b = majority_vote(reduced, tie_break);
    label_set.insert(a);
    label_set.insert(b);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  const std::vector<std::string> labels(label_set.begin(), label_set.end());
  auto code = [&labels](const std::string& label) {
    return static_cast<double>(std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
  };
  std::vector<std::string> item_ids;
  for (std::size_t i = 0; i < pairs.size(); ++i) item_ids.push_back(std::to_string(i));
  ReliabilityMatrix matrix(std::move(item_ids), {"full", "excluded"}, MeasurementLevel::kNominal);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    matrix.set(i, 0, code(pairs[i].first));
    matrix.set(i, 1, code(pairs[i].second));
  }
  return krippendorff_alpha(matrix);
}

double mean(std::span<const double> values) { return order_independent_mean(values); }

double median(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::kPrecondition, "median of zero values", "values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  if (sorted.size() % 2 == 1) return sorted[mid];
  return sorted[mid - 1] + 0.5 * (sorted[mid] - sorted[mid - 1]);
}

namespace {

// Unbiased sample variance, two-pass.
double sample_variance(std::span<const double> x, double m) {
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

double plain_mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

}  // namespace

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorKind::kPrecondition, "Welch's t-test needs at least two values per sample",
                "samples");
  }
  const double ma = plain_mean(a);
  const double mb = plain_mean(b);
  const double va = sample_variance(a, ma) / static_cast<double>(a.size());
  const double vb = sample_variance(b, mb) / static_cast<double>(b.size());
  WelchResult r;
  const double se2 = va + vb;
  if (se2 == 0.0) {
    r.degenerate = true;
    r.t = ma == mb ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), ma - mb);
    r.p = kNaN;
    r.dof = kNaN;
    return r;
  }
  r.t = (ma - mb) / std::sqrt(se2);
  r.dof = se2 * se2 / (va * va / static_cast<double>(a.size() - 1) +
                       vb * vb / static_cast<double>(b.size() - 1));
  r.p = student_t_two_sided_p(r.t, r.dof);
  return r;
}

std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kPrecondition, "pearson needs equal-length samples", "samples");
  }
  if (a.size() < 2) throw Error(ErrorKind::kPrecondition, "pearson needs at least two values", "samples");
  const double ma = plain_mean(a);
  const double mb = plain_mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return std::nullopt;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

LooShiftRow loo_score_shift(std::span<const ScoreRecord> records, std::string_view excluded) {
  std::map<std::string, std::vector<double>> all;
  std::map<std::string, std::vector<double>> kept;
  bool contributed = false;
  for (const auto& r : records) {
    all[r.claim_id].push_back(r.score);
    if (r.annotator_id == excluded) {
      contributed = true;
    } else {
      kept[r.claim_id].push_back(r.score);
    }
  }
  if (!contributed) {
    throw Error(ErrorKind::kPrecondition,
                "annotator '" + std::string(excluded) + "' contributed no records", "excluded");
  }

  LooShiftRow row;
  row.excluded = std::string(excluded);
  std::vector<double> baseline;
  std::vector<double> reduced;
  std::vector<double> abs_delta;
  for (const auto& [claim_id, scores] : all) {
    auto it = kept.find(claim_id);
    if (it == kept.end()) {
      ++row.claims_dropped;
      continue;
    }
    const double base = order_independent_mean(scores);
    const double without = order_independent_mean(it->second);
    baseline.push_back(base);
    reduced.push_back(without);
    abs_delta.push_back(std::fabs(without - base));
  }
  row.claims_used = baseline.size();
  if (baseline.empty()) return row;
  row.delta_mean = order_independent_mean(reduced) - order_independent_mean(baseline);
  row.mad = order_independent_mean(abs_delta);
  if (baseline.size() >= 2) {
    row.welch = welch_t_test(reduced, baseline);
  } else {
    row.welch = WelchResult{kNaN, kNaN, kNaN, true};
  }
  return row;
}

std::vector<LooShiftRow> loo_score_shift_all(std::span<const ScoreRecord> records) {
  std::set<std::string> annotators;
  for (const auto& r : records) annotators.insert(r.annotator_id);
  std::vector<LooShiftRow> rows;
  for (const auto& a : annotators) rows.push_back(loo_score_shift(records, a));
  return rows;
}

std::vector<ScoreBand> default_shift_bands() {
  return {
      {"Low (0.0–0.3)", 0.0, 0.3, false},
      {"Low–Mid (0.3–0.5)", 0.3, 0.5, false},
      {"Mid (0.5–0.7)", 0.5, 0.7, false},
      {"High (0.7–1.0)", 0.7, 1.0, true},
  };
}

namespace {

ShiftStats shift_stats(const std::vector<double>& deltas) {
  ShiftStats s;
  s.n = deltas.size();
  if (deltas.empty()) return s;
  std::vector<double> abs_deltas;
  std::size_t up = 0, down = 0, same = 0;
  for (double d : deltas) {
    abs_deltas.push_back(std::fabs(d));
    if (std::fabs(d) < kUnchangedTolerance) {
      ++same;
    } else if (d > 0) {
      ++up;
    } else {
      ++down;
    }
  }
  s.delta_mean = mean(deltas);
  s.delta_median = median(deltas);
  s.mean_abs_delta = mean(abs_deltas);
  const double n = static_cast<double>(deltas.size());
  s.pct_up = 100.0 * static_cast<double>(up) / n;
  s.pct_down = 100.0 * static_cast<double>(down) / n;
  s.pct_same = 100.0 * static_cast<double>(same) / n;
  return s;
}

bool in_band(const ScoreBand& band, double x) {
  return x >= band.lower && (x < band.upper || (band.closed_upper && x <= band.upper));
}

}  // namespace

ShiftReport review_shift_report(const ClaimScores& paper_only, const ClaimScores& review_informed,
                                const std::vector<ScoreBand>& bands) {
  std::vector<std::string> missing;
  for (const auto& [claim, score] : paper_only) {
    if (!review_informed.contains(claim)) missing.push_back(claim + " (no review-informed score)");
  }
  for (const auto& [claim, score] : review_informed) {
    if (!paper_only.contains(claim)) missing.push_back(claim + " (no paper-only score)");
  }
  if (!missing.empty()) {
    std::string msg = "claim sets differ:";
    for (const auto& m : missing) msg += " " + m + ";";
    throw Error(ErrorKind::kPrecondition, msg, "claims");
  }

  std::vector<double> before, after, deltas;
  std::vector<std::vector<double>> band_deltas(bands.size());
  for (const auto& [claim, p] : paper_only) {
    const double r = review_informed.at(claim);
    before.push_back(p);
    after.push_back(r);
    deltas.push_back(r - p);
    for (std::size_t b = 0; b < bands.size(); ++b) {
      if (in_band(bands[b], p)) {
        band_deltas[b].push_back(r - p);
        break;
      }
    }
  }

  ShiftReport report;
  report.overall = shift_stats(deltas);
  if (before.size() >= 2) report.pearson_r = pearson(before, after);
  for (std::size_t b = 0; b < bands.size(); ++b) {
    report.bands.push_back(ShiftBandRow{bands[b], shift_stats(band_deltas[b])});
  }
  return report;
}

std::pair<ClaimScores, ClaimScores> split_by_context(std::span<const ScoreRecord> records) {
  std::map<std::string, std::vector<double>> paper, review;
  for (const auto& r : records) {
    (r.context.paper_only() ? paper : review)[r.claim_id].push_back(r.score);
  }
  ClaimScores p, q;
  for (const auto& [claim, scores] : paper) {
    auto it = review.find(claim);
    if (it == review.end()) continue;
    p[claim] = order_independent_mean(scores);
    q[claim] = order_independent_mean(it->second);
  }
  return {p, q};
}

std::optional<double> mean_pairwise_pearson(std::span<const ScoreRecord> records, ContextFilter filter) {
  std::map<std::string, std::map<std::string, std::vector<double>>> by_annotator;
  for (const auto& r : records) {
    const bool keep = filter == ContextFilter::kPaperOnly ? r.context.paper_only() : !r.context.paper_only();
    if (keep) by_annotator[r.annotator_id][r.claim_id].push_back(r.score);
  }
  std::vector<std::string> ids;
  for (const auto& [id, claims] : by_annotator) ids.push_back(id);

  std::vector<double> correlations;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const auto& x = by_annotator[ids[i]];
      const auto& y = by_annotator[ids[j]];
      std::vector<double> a, b;
      for (const auto& [claim, scores] : x) {
        auto it = y.find(claim);
        if (it == y.end()) continue;
        a.push_back(order_independent_mean(scores));
        b.push_back(order_independent_mean(it->second));
      }
      if (a.size() < 2) continue;
      if (auto r = pearson(a, b)) correlations.push_back(*r);
    }
  }
  if (correlations.empty()) return std::nullopt;
  return plain_mean(correlations);
}

}  // namespace rigourate
