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

#include <benchmark/benchmark.h>

#include <random>

#include "rigourate/evidence.hpp"
#include "rigourate/segmenter.hpp"

namespace {

using namespace rigourate;

std::string synthetic_text(std::size_t sentences) {
  static const char* pieces[] = {
      "We evaluate on 3.5M nodes (see Fig. 2).", "Results improve by 4.2% over e.g. the baseline.",
      "Prior work, i.e. Smith et al., used dense layers.", "The method converges in 10 epochs.",
      "Table 3 lists the ablations; all runs use seed 7."};
  std::mt19937_64 rng(6);
  std::string out;
  for (std::size_t i = 0; i < sentences; ++i) {
    if (!out.empty()) out += ' ';
    out += pieces[rng() % 5];
  }
  return out;
}

void BM_Segment(benchmark::State& state) {
  const std::string text = synthetic_text(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(split_sentences(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_Segment)->Arg(100)->Arg(2000);

void BM_BuildContexts(benchmark::State& state) {
  const auto texts = split_sentences(synthetic_text(static_cast<std::size_t>(state.range(0))));
  std::vector<SentenceUnit> body;
  for (std::size_t i = 0; i < texts.size(); ++i) body.push_back(SentenceUnit{static_cast<SentenceId>(i), texts[i]});
  for (auto _ : state) benchmark::DoNotOptimize(build_contexts(body, "p:0", kDefaultTokenBudget));
}
BENCHMARK(BM_BuildContexts)->Arg(500)->Arg(5000);

}  // namespace
