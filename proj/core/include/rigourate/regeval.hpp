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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rigourate {

struct CccResult {
  double value = 0.0;
  // Both samples constant and equal; value is 1.0 by convention.
  bool degenerate = false;
};

// Lin's concordance correlation with population (1/n) moments. Throws
// Error(kPrecondition) on length mismatch or fewer than two values.
CccResult ccc(std::span<const double> pred, std::span<const double> ref);

// Throws Error(kPrecondition) on length mismatch or empty input.
double mae(std::span<const double> pred, std::span<const double> ref);

struct PredictionSet {
  std::map<std::string, double> predicted;
  std::map<std::string, double> reference;
};

struct RegressionReport {
  std::size_t n = 0;
  CccResult ccc;
  double mae = 0.0;
  // nullopt when either side has zero variance.
  std::optional<double> pearson;
  std::vector<std::string> warnings;
};

// Out-of-range predictions are clamped to [0, 1] with a warning. Throws
// Error(kValidation) when the key sets differ or a reference value lies
// outside [0, 1].
RegressionReport evaluate_predictions(const PredictionSet& set);

// "claim_id score" lines; blank lines and '#' comments skipped.
std::map<std::string, double> parse_prediction_file(std::string_view text);
std::map<std::string, double> read_prediction_file(const std::filesystem::path& path);

}  // namespace rigourate
