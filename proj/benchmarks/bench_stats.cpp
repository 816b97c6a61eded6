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

#include "rigourate/scoring.hpp"
#include "rigourate/stats.hpp"

namespace {

using namespace rigourate;

ReliabilityMatrix random_matrix(std::size_t items, std::size_t coders, MeasurementLevel level) {
  std::mt19937_64 rng(3);
  std::vector<std::string> item_ids, coder_ids;
  for (std::size_t i = 0; i < items; ++i) item_ids.push_back("u" + std::to_string(i));
  for (std::size_t a = 0; a < coders; ++a) coder_ids.push_back("a" + std::to_string(a));
  ReliabilityMatrix m(item_ids, coder_ids, level);
  for (std::size_t i = 0; i < items; ++i) {
    for (std::size_t a = 0; a < coders; ++a) {
      if (rng() % 10) m.set(i, a, double(1 + rng() % 5));
    }
  }
  return m;
}

void BM_AlphaNominal(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 8, MeasurementLevel::kNominal);
  for (auto _ : state) benchmark::DoNotOptimize(krippendorff_alpha(m));
}
BENCHMARK(BM_AlphaNominal)->Arg(1000)->Arg(10000);

void BM_AlphaOrdinal(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 8, MeasurementLevel::kOrdinal);
  for (auto _ : state) benchmark::DoNotOptimize(krippendorff_alpha(m));
}
BENCHMARK(BM_AlphaOrdinal)->Arg(1000)->Arg(10000);

void BM_Welch(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.5, 0.1);
  std::vector<double> a(static_cast<std::size_t>(state.range(0))), b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = n(rng);
    b[i] = n(rng) + 0.01;
  }
  for (auto _ : state) benchmark::DoNotOptimize(welch_t_test(a, b));
}
BENCHMARK(BM_Welch)->Arg(1000)->Arg(100000);

void BM_LooShiftAll(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ScoreRecord> records;
  for (int c = 0; c < state.range(0); ++c) {
    for (int a = 0; a < 8; ++a) {
      for (int r = 0; r < 4; ++r) {
        ScoreRecord rec;
        rec.claim_id = "c" + std::to_string(c);
        rec.annotator_id = "m" + std::to_string(a);
        if (r > 0) rec.context = ScoreContext{"r" + std::to_string(r)};
        rec.score = u(rng);
        records.push_back(std::move(rec));
      }
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(loo_score_shift_all(records));
}
BENCHMARK(BM_LooShiftAll)->Arg(500);

}  // namespace
