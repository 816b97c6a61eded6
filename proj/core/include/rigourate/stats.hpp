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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rigourate/scoring.hpp"

namespace rigourate {

enum class MeasurementLevel { kNominal, kOrdinal };

// Items x annotators; a missing cell is nullopt. Nominal values are category
// codes; ordinal values are ranks (any totally ordered reals).
struct ReliabilityMatrix {
  std::vector<std::string> items;
  std::vector<std::string> annotators;
  std::vector<std::vector<std::optional<double>>> values;
  MeasurementLevel level = MeasurementLevel::kNominal;

  ReliabilityMatrix() = default;
  ReliabilityMatrix(std::vector<std::string> item_ids, std::vector<std::string> annotator_ids,
                    MeasurementLevel level);

  void set(std::size_t item, std::size_t annotator, double value);
};

struct AlphaResult {
  double alpha = 1.0;
  // Expected disagreement was zero (a single category); alpha is reported
  // as 1.0 by convention.
  bool degenerate = false;
  // Number of pairable values n.
  double pairable = 0.0;
};

// Coincidence-matrix Krippendorff's alpha. Units with fewer than two values
// are not pairable and are ignored. The ordinal distance is Krippendorff's
// rank metric (sum of marginals from c to k minus half the endpoints,
// squared). Throws Error(kPrecondition) with fewer than two annotators or no
// pairable unit.
AlphaResult krippendorff_alpha(const ReliabilityMatrix& matrix);

// Per item: annotator_id -> label.
using ItemVotes = std::vector<std::map<std::string, std::string>>;

// Nominal alpha between the full-panel majority and the majority without
// `excluded`, treated as two coders over the items. Items where the reduced
// panel cast no vote are skipped.
AlphaResult leave_one_out_agreement(const ItemVotes& votes, std::string_view excluded,
                                    std::string_view tie_break);

struct WelchResult {
  double t = 0.0;
  double p = 1.0;
  double dof = 0.0;
  // Both samples have zero variance; p is NaN.
  bool degenerate = false;
};

// Two-sided unequal-variance t-test with Welch-Satterthwaite dof. Throws
// Error(kPrecondition) if either sample has fewer than two values.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

// Product-moment correlation; nullopt when either sample has zero variance.
// Throws Error(kPrecondition) on length mismatch or fewer than two values.
std::optional<double> pearson(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> values);
double median(std::span<const double> values);

struct LooShiftRow {
  std::string excluded;
  double delta_mean = 0.0;
  double mad = 0.0;
  WelchResult welch;
  std::size_t claims_used = 0;
  std::size_t claims_dropped = 0;
};

// Per-claim soft labels with and without `excluded`; claims left with no
// records are dropped from both samples.
LooShiftRow loo_score_shift(std::span<const ScoreRecord> records, std::string_view excluded);

// One row per annotator that contributed records, in annotator_id order.
std::vector<LooShiftRow> loo_score_shift_all(std::span<const ScoreRecord> records);

struct ScoreBand {
  std::string label;
  double lower = 0.0;
  double upper = 1.0;
  // The last band includes its upper edge.
  bool closed_upper = false;
};

std::vector<ScoreBand> default_shift_bands();

inline constexpr double kUnchangedTolerance = 1e-12;

struct ShiftStats {
  std::size_t n = 0;
  double delta_mean = 0.0;
  double delta_median = 0.0;
  double mean_abs_delta = 0.0;
  double pct_up = 0.0;
  double pct_down = 0.0;
  double pct_same = 0.0;
};

struct ShiftBandRow {
  ScoreBand band;
  ShiftStats stats;
};

struct ShiftReport {
  ShiftStats overall;
  std::optional<double> pearson_r;
  std::vector<ShiftBandRow> bands;
};

using ClaimScores = std::map<std::string, double>;

// delta = review_informed - paper_only per claim; bands stratify by the
// paper-only score. Throws Error(kPrecondition) listing claims present in
// only one map.
ShiftReport review_shift_report(const ClaimScores& paper_only, const ClaimScores& review_informed,
                                const std::vector<ScoreBand>& bands = default_shift_bands());

// Per-claim means of the paper-only records and of the review-informed
// records, restricted to claims that have both.
std::pair<ClaimScores, ClaimScores> split_by_context(std::span<const ScoreRecord> records);

// One row of the leave-one-annotator-out agreement table; a setting the
// annotator took no part in is nullopt.
struct AgreementRow {
  std::string excluded;
  std::optional<double> own;
  std::optional<double> text;
  std::optional<double> image;
};

enum class ContextFilter { kPaperOnly, kReviewInformed };

// Mean over unordered annotator pairs of Pearson r over the claims both
// scored (per-claim mean when an annotator has several records under the
// filter). Pairs with fewer than two shared claims or zero variance are
// skipped; nullopt if none remain.
std::optional<double> mean_pairwise_pearson(std::span<const ScoreRecord> records, ContextFilter filter);

}  // namespace rigourate
