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

#include <atomic>
#include <filesystem>
#include <mutex>
#include <set>

#include "fixture_run.hpp"
#include "rigourate/annotator.hpp"
#include "rigourate/error.hpp"
#include "rigourate/hash.hpp"
#include "rigourate/parallel.hpp"

using namespace rigourate;
using testing_support::TempDir;
namespace fs = std::filesystem;

namespace {

AnnotatorConfig text_config(std::string id = "t1") {
  AnnotatorConfig c;
  c.annotator_id = id;
  c.endpoint_url = "stub:unused";
  c.model_name = id + "-model";
  c.max_retries = 3;
  c.initial_backoff = std::chrono::milliseconds(0);
  return c;
}

const Bindings kOwnBindings = {{"ABSTRACT", "a"}, {"INTRODUCTION", "i"}, {"SENTENCE", "s"}};

ResponseParser own_parser() { return label_parser({"original_statement", "not_original_statement"}); }

}  // namespace

TEST_CASE("second call is served from the cache with identical raw text") {
  TempDir dir;
  auto cache = std::make_shared<ResponseCache>(dir.path());
  std::atomic<int> calls{0};
  auto backend = std::make_shared<FunctionChatBackend>([&](const ChatRequest&) {
    ++calls;
    return std::string("thinking <Label>original_statement</Label>");
  });
  Annotator a(text_config(), backend, cache);
  const auto first = a.annotate(templates::own_statement(), kOwnBindings, {}, own_parser());
  const auto second = a.annotate(templates::own_statement(), kOwnBindings, {}, own_parser());
  CHECK(first.ok());
  CHECK_FALSE(first.from_cache);
  CHECK(second.from_cache);
  CHECK(second.raw_text == first.raw_text);
  CHECK(second.cache_key == first.cache_key);
  CHECK(calls == 1);
  CHECK(fs::exists(cache->path_for(first.cache_key)));
}

TEST_CASE("transport failure after max_retries attempts with exponential backoff") {
  std::atomic<int> calls{0};
  auto backend = std::make_shared<FunctionChatBackend>([&](const ChatRequest&) -> std::string {
    ++calls;
    throw Error(ErrorKind::kTransport, "connection refused");
  });
  AnnotatorConfig cfg = text_config();
  cfg.max_retries = 4;
  cfg.initial_backoff = std::chrono::milliseconds(100);
  cfg.backoff_factor = 2.0;
  Annotator a(cfg, backend);
  std::vector<long long> sleeps;
  a.set_sleep([&](std::chrono::milliseconds d) { sleeps.push_back(d.count()); });
  const auto r = a.annotate(templates::own_statement(), kOwnBindings, {}, own_parser());
  CHECK(r.status == AnnotationStatus::kTransportFailed);
  CHECK_FALSE(r.parsed.has_value());
  CHECK(r.attempts == 4);
  CHECK(calls == 4);
  CHECK(sleeps == std::vector<long long>{100, 200, 400});
}

TEST_CASE("a transient failure is retried and then succeeds") {
  std::atomic<int> calls{0};
  auto backend = std::make_shared<FunctionChatBackend>([&](const ChatRequest&) -> std::string {
    if (++calls < 3) throw Error(ErrorKind::kTransport, "HTTP 503");
    return "<Label>not_original_statement</Label>";
  });
  Annotator a(text_config(), backend);
  const auto r = a.annotate(templates::own_statement(), kOwnBindings, {}, own_parser());
  REQUIRE(r.ok());
  CHECK(r.value<std::string>() == "not_original_statement");
  CHECK(r.attempts == 3);
}

TEST_CASE("text annotator given images is a modality error") {
  auto backend = std::make_shared<FunctionChatBackend>([](const ChatRequest&) { return std::string(); });
  Annotator a(text_config(), backend);
  const std::vector<fs::path> images = {testing_support::fixtures_dir() / "corpus/images/p1_fig1.png"};
  try {
    a.call("visual_evidence", "prompt", {}, images);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kModality);
    CHECK(std::string(e.what()).find("modality mismatch") != std::string::npos);
  }
}

TEST_CASE("vision request carries the image payload") {
  const fs::path image = testing_support::fixtures_dir() / "corpus/images/p1_fig1.png";
  std::vector<fs::path> seen;
  auto backend = std::make_shared<FunctionChatBackend>([&](const ChatRequest& r) {
    seen = r.images;
    return std::string("<Label>relevant</Label>");
  });
  AnnotatorConfig cfg = text_config("v1");
  cfg.modality = Modality::kVision;
  Annotator a(cfg, backend);
  const std::vector<fs::path> images = {image};
  const auto raw = a.call("visual_evidence", "prompt", {}, images);
  REQUIRE(raw.text.has_value());
  CHECK(seen == images);

  ChatRequest req;
  req.model = "m";
  req.user_prompt = "look";
  req.images = images;
  const auto body = HttpChatBackend::request_body(req);
  const auto& content = body["messages"].back()["content"];
  REQUIRE(content.is_array());
  CHECK(content[0]["text"] == "look");
  const std::string url = content[1]["image_url"]["url"];
  CHECK(url.rfind("data:image/png;base64,", 0) == 0);
  CHECK(url.substr(22) == base64_encode(read_file(image)));
}

TEST_CASE("unparseable answer earns one reformat retry") {
  std::vector<std::string> prompts;
  auto backend = std::make_shared<FunctionChatBackend>([&](const ChatRequest& r) {
    prompts.push_back(r.user_prompt);
    return prompts.size() == 1 ? std::string("I think it is original.") : std::string("<Label>original_statement</Label>");
  });
  Annotator a(text_config(), backend);
  const auto r = a.annotate(templates::own_statement(), kOwnBindings, {}, own_parser());
  REQUIRE(r.ok());
  CHECK(r.reformatted);
  REQUIRE(prompts.size() == 2);
  CHECK(prompts[1] == prompts[0] + std::string(reformat_reminder(ExpectedTag::kLabel)));
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("two unparseable answers give parse_failed") {
  auto backend = std::make_shared<FunctionChatBackend>([](const ChatRequest&) { return std::string("no idea"); });
  Annotator a(text_config(), backend);
  const auto r = a.annotate(templates::own_statement(), kOwnBindings, {}, own_parser());
  CHECK(r.status == AnnotationStatus::kParseFailed);
  CHECK_FALSE(r.parsed.has_value());
  CHECK_FALSE(r.error.empty());
}

TEST_CASE("cache key changes with every input") {
  const std::vector<fs::path> none;
  const std::vector<fs::path> one = {"a.png"};
  const std::vector<fs::path> two = {"b.png"};
  const std::string base = make_cache_key("own_statement", "m", 0.0, "p", none);
  CHECK(base == make_cache_key("own_statement", "m", 0.0, "p", none));
  std::set<std::string> keys = {base,
                                make_cache_key("text_evidence", "m", 0.0, "p", none),
                                make_cache_key("own_statement", "m2", 0.0, "p", none),
                                make_cache_key("own_statement", "m", 0.5, "p", none),
                                make_cache_key("own_statement", "m", 0.0, "q", none),
                                make_cache_key("own_statement", "m", 0.0, "p", one),
                                make_cache_key("own_statement", "m", 0.0, "p", two)};
  CHECK(keys.size() == 7);
  CHECK(base.size() == 64);
}

TEST_CASE("stub backend rules") {
  nlohmann::json rules = {
      {"rules",
       {{{"template", "own_statement"}, {"model", "m1"}, {"match", {{"SENTENCE", "alpha"}}}, {"response", "R1"}},
        {{"template", "own_statement"}, {"match", {{"SENTENCE", "alpha"}}}, {"response", "R2"}},
        {{"template", "own_statement"}, {"match", {{"SENTENCE", "down"}}}, {"fail", true}}}},
      {"defaults", {{"own_statement", "D"}}}};
  StubChatBackend stub(rules);
  ChatRequest r;
  r.template_id = "own_statement";
  r.model = "m1";
  r.bindings = {{"SENTENCE", "the alpha case"}};
  CHECK(stub.complete(r) == "R1");
  r.model = "m2";
  CHECK(stub.complete(r) == "R2");
  r.bindings = {{"SENTENCE", "other"}};
  CHECK(stub.complete(r) == "D");
  r.bindings = {{"SENTENCE", "down"}};
  CHECK_THROWS_AS(stub.complete(r), Error);
  r.template_id = "score";
  CHECK_THROWS_AS(stub.complete(r), Error);
  CHECK(stub.calls() == 5);
}

TEST_CASE("make_backend understands stub endpoints and rejects unknown schemes") {
  AnnotatorConfig c = text_config();
  c.endpoint_url = "stub:stub_rules.json";
  CHECK(make_backend(c, testing_support::fixtures_dir()) != nullptr);
  c.endpoint_url = "ftp://x";
  CHECK_THROWS_AS(make_backend(c), Error);
}

TEST_CASE("vision_subset keeps vision annotators in order") {
  auto backend = std::make_shared<FunctionChatBackend>([](const ChatRequest&) { return std::string(); });
  Panel panel;
  for (int i = 0; i < 4; ++i) {
    AnnotatorConfig c = text_config("a" + std::to_string(i));
    c.modality = i % 2 ? Modality::kVision : Modality::kText;
    panel.emplace_back(c, backend);
  }
  const Panel v = vision_subset(panel);
  REQUIRE(v.size() == 2);
  CHECK(v[0].id() == "a1");
  CHECK(v[1].id() == "a3");
}

TEST_CASE("parallel_for visits each index once and rethrows the first error") {
  std::mutex m;
  std::multiset<std::size_t> seen;
  parallel_for(100, 4, [&](std::size_t i) {
    std::lock_guard lock(m);
    seen.insert(i);
  });
  CHECK(seen.size() == 100);
  for (std::size_t i = 0; i < 100; ++i) CHECK(seen.count(i) == 1);
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 5) throw Error(ErrorKind::kIo, "boom");
                  }),
                  Error);
}

TEST_CASE("sha256 and base64 known answers") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(base64_encode(std::string_view("foobar")) == "Zm9vYmFy");
  CHECK(base64_encode(std::string_view("fo")) == "Zm8=");
}
