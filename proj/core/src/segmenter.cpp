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

#include "rigourate/segmenter.hpp"

#include <algorithm>
#include <cctype>

namespace rigourate {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_terminal(char c) { return c == '.' || c == '?' || c == '!'; }

bool is_lower_ascii(char c) { return c >= 'a' && c <= 'z'; }

bool is_upper_ascii(char c) { return c >= 'A' && c <= 'Z'; }

// Length of a closing quote/bracket at `pos`, 0 if none. Handles the UTF-8
// right double/single quotation marks.
std::size_t closer_length(std::string_view t, std::size_t pos) {
  const char c = t[pos];
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  if (pos + 2 < t.size() && static_cast<unsigned char>(c) == 0xE2 &&
      static_cast<unsigned char>(t[pos + 1]) == 0x80) {
    const auto third = static_cast<unsigned char>(t[pos + 2]);
    if (third == 0x9D || third == 0x99) return 3;
  }
  return 0;
}

// depth[i] = number of matched bracket pairs strictly enclosing position i.
// Unmatched brackets are ignored so a stray "(" cannot swallow the rest of
// the text.
std::vector<int> bracket_depth(std::string_view t) {
  std::vector<int> delta(t.size() + 1, 0);
  std::vector<std::pair<char, std::size_t>> stack;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const char c = t[i];
    if (c == '(' || c == '[') {
      stack.emplace_back(c, i);
    } else if (c == ')' || c == ']') {
      const char open = c == ')' ? '(' : '[';
      auto it = std::find_if(stack.rbegin(), stack.rend(),
                             [open](const auto& e) { return e.first == open; });
      if (it == stack.rend()) continue;
      const std::size_t start = it->second;
      stack.erase(std::next(it).base(), stack.end());
      delta[start + 1] += 1;
      delta[i] -= 1;
    }
  }
  std::vector<int> depth(t.size(), 0);
  int running = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    running += delta[i];
    depth[i] = running;
  }
  return depth;
}

// True when the words from `pos` are zero or more further initials ("R.")
// followed by a capitalised word of two or more letters.
bool initials_lead_to_name(std::string_view t, std::size_t pos) {
  while (pos < t.size()) {
    std::size_t end = pos;
    while (end < t.size() && t[end] != ' ') ++end;
    const std::string_view word = t.substr(pos, end - pos);
    if (word.size() == 2 && is_upper_ascii(word[0]) && word[1] == '.') {
      pos = end + 1;
      continue;
    }
    return word.size() >= 2 && is_upper_ascii(word[0]) && is_lower_ascii(word[1]);
  }
  return false;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

const std::vector<std::string>& RuleBasedSegmenter::default_abbreviations() {
  static const std::vector<std::string> kAbbreviations = {
      "al",    "e.g",  "i.e",    "cf",   "vs",   "viz",  "fig",   "figs", "eq",
      "eqs",   "eqn",  "sec",    "secs", "tab",  "ref",  "refs",  "app",  "appx",
      "approx", "resp", "incl",  "w.r.t", "a.k.a", "thm", "lem",  "prop", "def",
      "cor",   "alg",  "dr",     "prof", "mr",   "mrs",  "ms",    "jr",   "sr",
      "st",    "vol",  "pp",     "ch",   "ca",
  };
  return kAbbreviations;
}

RuleBasedSegmenter::RuleBasedSegmenter() : RuleBasedSegmenter(default_abbreviations()) {}

RuleBasedSegmenter::RuleBasedSegmenter(std::vector<std::string> abbreviations) {
  for (auto& a : abbreviations) abbreviations_.insert(to_lower(a));
}

bool RuleBasedSegmenter::is_abbreviation(std::string_view word) const {
  return abbreviations_.contains(to_lower(word));
}

std::vector<std::string> RuleBasedSegmenter::split(std::string_view text) const {
  const std::string t = collapse_whitespace(text);
  std::vector<std::string> out;
  if (t.empty()) return out;

  const std::vector<int> depth = bracket_depth(t);
  std::size_t sentence_start = 0;
  std::size_t i = 0;
  while (i < t.size()) {
    if (!is_terminal(t[i])) {
      ++i;
      continue;
    }
    const std::size_t first_terminal = i;
    std::size_t k = i;
    while (k < t.size() && is_terminal(t[k])) ++k;
    const std::size_t terminal_run = k - first_terminal;
    while (k < t.size()) {
      const std::size_t len = closer_length(t, k);
      if (len == 0) break;
      k += len;
    }
    i = k;
    // Boundaries sit on a space (or the end of text).
    if (k < t.size() && t[k] != ' ') continue;
    if (k >= t.size()) break;
    if (depth[first_terminal] > 0) continue;
    if (k + 1 < t.size() && is_lower_ascii(t[k + 1])) continue;

    if (terminal_run == 1 && t[first_terminal] == '.') {
      std::size_t word_start = first_terminal;
      while (word_start > sentence_start && t[word_start - 1] != ' ') --word_start;
      std::string_view word(t.data() + word_start, first_terminal - word_start);
      while (!word.empty() && (word.front() == '(' || word.front() == '[' ||
                               word.front() == '"' || word.front() == '\'')) {
        word.remove_prefix(1);
      }
      if (is_abbreviation(word)) continue;
      // A lone capital is an initial ("J. Smith"). At the start of a
      // sentence it must lead to a name, so "A. B." still splits.
      if (word.size() == 1 && is_upper_ascii(word[0]) &&
          (word_start != sentence_start || initials_lead_to_name(t, k + 1))) {
        continue;
      }
    }

    out.emplace_back(t.substr(sentence_start, k - sentence_start));
    sentence_start = k + 1;
  }
  if (sentence_start < t.size()) out.emplace_back(t.substr(sentence_start));
  return out;
}

std::shared_ptr<const SentenceSegmenter> default_segmenter() {
  static const auto kSegmenter = std::make_shared<const RuleBasedSegmenter>();
  return kSegmenter;
}

std::vector<std::string> split_sentences(std::string_view text) {
  return default_segmenter()->split(text);
}

}  // namespace rigourate
