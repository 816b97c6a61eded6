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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rigourate/pipeline.hpp"

namespace {

template <typename T>
void maybe(std::optional<T>& target, const std::string& value) {
  if (!value.empty()) target = value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rigourate: claim, evidence and overstatement annotation pipeline"};
  app.require_subcommand(1);

  std::string config, papers, split, out = "run", run_file, qrels, predictions, reference, model;
  std::vector<int> ks;
  std::optional<std::uint64_t> seed;

  app.add_option("--config", config, "Pipeline configuration file (JSON)");
  app.add_option("--papers", papers, "Corpus directory, overrides corpus_dir");
  app.add_option("--split", split, "train, dev or test")->check(CLI::IsMember({"train", "dev", "test"}));
  app.add_option("--out", out, "Run directory")->capture_default_str();
  app.add_option("--k", ks, "Metric cutoffs, e.g. --k 5,10,20")->delimiter(',')->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Split seed, overrides the config");
  app.add_option("--run", run_file, "Ranked run file (eval-retrieval)");
  app.add_option("--qrels", qrels, "Qrels file (eval-retrieval); defaults to the exported split");
  app.add_option("--predictions", predictions, "Prediction file (eval-overstatement)");
  app.add_option("--reference", reference, "Reference file (eval-overstatement); defaults to soft labels");
  app.add_option("--model", model, "Row label for evaluation tables");

  for (auto name : rigourate::subcommands()) {
    app.add_subcommand(std::string(name))->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  rigourate::RunOptions options;
  maybe(options.config, config);
  maybe(options.papers, papers);
  maybe(options.split, split);
  options.out = out;
  options.ks = ks;
  options.seed = seed;
  maybe(options.run_file, run_file);
  maybe(options.qrels_file, qrels);
  maybe(options.predictions, predictions);
  maybe(options.reference, reference);
  maybe(options.model, model);

  const std::string name = app.get_subcommands().front()->get_name();
  return rigourate::run_subcommand(name, options, std::cout, std::cerr);
}
