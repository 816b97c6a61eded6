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

#include <algorithm>
#include <random>

#include "rigourate/ireval.hpp"
#include "rigourate/regeval.hpp"

namespace {

using namespace rigourate;

struct Instance {
  Runs runs;
  Qrels qrels;
};

Instance make_instance(int claims, int candidates) {
  std::mt19937_64 rng(1);
  Instance in;
  for (int c = 0; c < claims; ++c) {
    const std::string id = "c" + std::to_string(c);
    RankedRun run;
    run.claim_id = id;
    QrelsEntry q;
    for (int i = 0; i < candidates; ++i) {
      run.ranking.push_back("e" + std::to_string(i));
      run.scores.push_back(1.0 / (i + 1));
      q.judged.insert(run.ranking.back());
      if (rng() % 5 == 0) q.relevant.insert(run.ranking.back());
    }
    std::shuffle(run.ranking.begin(), run.ranking.end(), rng);
    in.runs.emplace(id, std::move(run));
    in.qrels.emplace(id, std::move(q));
  }
  return in;
}

void BM_EvaluateRun(benchmark::State& state) {
  const auto in = make_instance(static_cast<int>(state.range(0)), 60);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_run(in.runs, in.qrels));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvaluateRun)->Arg(100)->Arg(1000);

void BM_ParseRun(benchmark::State& state) {
  const std::string text = format_run(make_instance(static_cast<int>(state.range(0)), 60).runs);
  for (auto _ : state) benchmark::DoNotOptimize(parse_run(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseRun)->Arg(1000);

void BM_Ccc(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(state.range(0))), y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = u(rng);
    y[i] = u(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(ccc(x, y));
}
BENCHMARK(BM_Ccc)->Arg(1000)->Arg(100000);

}  // namespace
