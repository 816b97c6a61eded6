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

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rigourate/error.hpp"
#include "rigourate/regeval.hpp"
#include "rigourate/stats.hpp"

using namespace rigourate;

TEST_CASE("ccc closed forms") {
  const std::vector<double> a{1, 2, 3}, b{2, 3, 4};
  CHECK(ccc(a, b).value == 4.0 / 7.0);
  CHECK(ccc(a, a).value == 1.0);
  const std::vector<double> flat{0.5, 0.5, 0.5};
  CHECK(ccc(flat, a).value == 0.0);
  CHECK_FALSE(ccc(flat, a).degenerate);
  const auto same_const = ccc(flat, flat);
  CHECK(same_const.degenerate);
  CHECK(same_const.value == 1.0);
  CHECK_THROWS_AS(ccc(std::vector<double>{1}, std::vector<double>{1}), Error);
  CHECK_THROWS_AS(ccc(a, std::vector<double>{1, 2}), Error);
}

TEST_CASE("mae") {
  const std::vector<double> ref{0.1, 0.4, 0.7};
  CHECK(mae(ref, ref) == 0.0);
  const std::vector<double> shifted{0.2, 0.5, 0.8};
  CHECK(mae(shifted, ref) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(mae(std::vector<double>{}, std::vector<double>{}), Error);
}

TEST_CASE("random samples against the moment oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 60;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = u(rng);
      y[i] = 0.5 * x[i] + 0.5 * u(rng);
    }
    const double c = ccc(x, y).value;
    const double r = *pearson(x, y);
    CHECK(std::fabs(c - oracle::ccc(x, y)) < 1e-12);
    CHECK(std::fabs(r - oracle::pearson(x, y)) < 1e-12);
    CHECK(std::fabs(mae(x, y) - oracle::mae(x, y)) < 1e-12);
    CHECK(c <= std::fabs(r) + 1e-15);
    std::vector<double> mid(n);
    for (auto& m : mid) m = u(rng);
    CHECK(mae(x, y) <= mae(x, mid) + mae(mid, y) + 1e-15);
  }
}

TEST_CASE("location shift lowers ccc but not pearson") {
  const std::vector<double> x{0.1, 0.3, 0.2, 0.6, 0.5};
  std::vector<double> y = x;
  for (auto& v : y) v += 0.2;
  CHECK(ccc(x, y).value < 1.0);
  CHECK(*pearson(x, y) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evaluate_predictions") {
  PredictionSet set;
  set.reference = {{"a", 0.1}, {"b", 0.5}, {"c", 0.9}};
  set.predicted = set.reference;
  auto rep = evaluate_predictions(set);
  CHECK(rep.n == 3);
  CHECK(rep.ccc.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rep.mae == 0.0);
  CHECK(*rep.pearson == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rep.warnings.empty());

  set.predicted["c"] = 1.4;
  rep = evaluate_predictions(set);
  REQUIRE(rep.warnings.size() == 1);
  CHECK(rep.warnings[0].find("'c'") != std::string::npos);
  CHECK(rep.mae == doctest::Approx(0.1 / 3));

  set.predicted.erase("b");
  set.predicted["z"] = 0.3;
  try {
    evaluate_predictions(set);
    FAIL("expected key mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kValidation);
    const std::string msg = e.what();
    CHECK(msg.find("b (no prediction)") != std::string::npos);
    CHECK(msg.find("z (no reference)") != std::string::npos);
  }
}

TEST_CASE("prediction files") {
  const auto m = parse_prediction_file("# claim score\na 0.25\n\nb 1e-1\n");
  CHECK(m.size() == 2);
  CHECK(m.at("b") == 0.1);
  CHECK_THROWS_AS(parse_prediction_file("a\n"), Error);
  CHECK_THROWS_AS(parse_prediction_file("a 0.1 extra\n"), Error);
  CHECK_THROWS_AS(parse_prediction_file("a x\n"), Error);
  CHECK_THROWS_AS(parse_prediction_file("a 0.1\na 0.2\n"), Error);
}
