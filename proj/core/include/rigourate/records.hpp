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

#include <string_view>

#include <nlohmann/json.hpp>

#include "rigourate/audit.hpp"
#include "rigourate/claims.hpp"
#include "rigourate/corpus.hpp"
#include "rigourate/error.hpp"
#include "rigourate/evidence.hpp"
#include "rigourate/ireval.hpp"
#include "rigourate/regeval.hpp"
#include "rigourate/scoring.hpp"
#include "rigourate/stats.hpp"

// JSON forms of the stage records. The to_json/from_json pairs plug into
// nlohmann's ADL conversions; use record_from() to get Error(kParse) instead
// of a library exception on malformed input.

namespace rigourate {

void to_json(nlohmann::json& j, const SentenceUnit& s);
void from_json(const nlohmann::json& j, SentenceUnit& s);

// Segmented form (sentence units included), unlike the input format.
void to_json(nlohmann::json& j, const PaperDocument& p);
void from_json(const nlohmann::json& j, PaperDocument& p);

void to_json(nlohmann::json& j, const Claim& c);
void from_json(const nlohmann::json& j, Claim& c);

void to_json(nlohmann::json& j, const EvidenceItem& e);
void from_json(const nlohmann::json& j, EvidenceItem& e);

// {"claim": ..., "items": [...]}: supporting and non-supporting together.
void to_json(nlohmann::json& j, const ClaimEvidenceSet& s);
void from_json(const nlohmann::json& j, ClaimEvidenceSet& s);

void to_json(nlohmann::json& j, const ScoreRecord& r);
void from_json(const nlohmann::json& j, ScoreRecord& r);

void to_json(nlohmann::json& j, const SoftLabel& s);
void from_json(const nlohmann::json& j, SoftLabel& s);

void to_json(nlohmann::json& j, const AuditEntry& a);
void from_json(const nlohmann::json& j, AuditEntry& a);

// Analysis results. NaN and nullopt are written as null.
void to_json(nlohmann::json& j, const WelchResult& w);
void from_json(const nlohmann::json& j, WelchResult& w);
void to_json(nlohmann::json& j, const LooShiftRow& r);
void from_json(const nlohmann::json& j, LooShiftRow& r);
void to_json(nlohmann::json& j, const ShiftStats& s);
void from_json(const nlohmann::json& j, ShiftStats& s);
void to_json(nlohmann::json& j, const ShiftReport& r);
void from_json(const nlohmann::json& j, ShiftReport& r);
void to_json(nlohmann::json& j, const AgreementRow& r);
void from_json(const nlohmann::json& j, AgreementRow& r);

// Metric values in [0, 1]; cutoffs keyed by their decimal string.
void to_json(nlohmann::json& j, const RetrievalReport& r);
void from_json(const nlohmann::json& j, RetrievalReport& r);
void to_json(nlohmann::json& j, const RegressionReport& r);
void from_json(const nlohmann::json& j, RegressionReport& r);

template <typename T>
T record_from(const nlohmann::json& j, std::string_view what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed ") + std::string(what) + ": " + e.what(),
                std::string(what));
  }
}

template <typename T>
std::vector<T> records_from(const std::vector<nlohmann::json>& lines, std::string_view what) {
  std::vector<T> out;
  out.reserve(lines.size());
  for (const auto& line : lines) out.push_back(record_from<T>(line, what));
  return out;
}

template <typename T>
std::vector<nlohmann::json> to_records(const std::vector<T>& values) {
  std::vector<nlohmann::json> out;
  out.reserve(values.size());
  for (const auto& v : values) out.emplace_back(v);
  return out;
}

}  // namespace rigourate
