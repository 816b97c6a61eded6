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

#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace rigourate {

// Splits prose into sentences. Implementations must be conservative: joining
// the output with single spaces reproduces the whitespace-collapsed input.
class SentenceSegmenter {
 public:
  virtual ~SentenceSegmenter() = default;
  virtual std::vector<std::string> split(std::string_view text) const = 0;
};

// Terminal punctuation splitter with guards for abbreviations, initials,
// decimals and bracketed citations. A boundary is only placed after a run of
// [.?!] (plus closing quotes/brackets) that is followed by a space and then a
// character that is not a lower-case letter.
class RuleBasedSegmenter final : public SentenceSegmenter {
 public:
  RuleBasedSegmenter();
  // Abbreviations are matched case-insensitively, without the final period
  // ("e.g", "fig", "al").
  explicit RuleBasedSegmenter(std::vector<std::string> abbreviations);

  std::vector<std::string> split(std::string_view text) const override;

  static const std::vector<std::string>& default_abbreviations();

 private:
  bool is_abbreviation(std::string_view word) const;

  std::unordered_set<std::string> abbreviations_;
};

// Trims and collapses every run of ASCII whitespace to one space.
std::string collapse_whitespace(std::string_view text);

// Uses a process-wide RuleBasedSegmenter.
std::vector<std::string> split_sentences(std::string_view text);

std::shared_ptr<const SentenceSegmenter> default_segmenter();

}  // namespace rigourate
