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

#include <cstdlib>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "rigourate/annotator.hpp"
#include "rigourate/backend.hpp"
#include "rigourate/error.hpp"

using namespace rigourate;
using nlohmann::json;

namespace {

// Local chat-completion server answering from a handler.
class LocalServer {
 public:
  explicit LocalServer(std::function<void(const httplib::Request&, httplib::Response&)> handler) {
    server_.Post("/v1/chat/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

json reply(const std::string& text) {
  return json{{"choices", json::array({{{"message", {{"role", "assistant"}, {"content", text}}}}})}};
}

}  // namespace

TEST_CASE("http backend posts a chat completion and reads the assistant text") {
  std::mutex m;
  json seen_body;
  std::string seen_auth;
  LocalServer server([&](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard lock(m);
    seen_body = json::parse(req.body);
    seen_auth = req.get_header_value("Authorization");
    res.set_content(reply("<Label>relevant</Label>").dump(), "application/json");
  });
  HttpChatBackend backend(server.url(), std::string("sekret"));
  ChatRequest r;
  r.model = "some-model";
  r.user_prompt = "hello";
  r.temperature = 0.0;
  CHECK(backend.complete(r) == "<Label>relevant</Label>");
  std::lock_guard lock(m);
  CHECK(seen_body["model"] == "some-model");
  CHECK(seen_body["temperature"] == 0.0);
  CHECK(seen_body["messages"].back()["role"] == "user");
  CHECK(seen_body["messages"].back()["content"] == "hello");
  CHECK(seen_auth == "Bearer sekret");
}

TEST_CASE("http errors surface as transport errors and are retried") {
  int hits = 0;
  LocalServer server([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    if (hits == 1) {
      res.status = 503;
      res.set_content("busy", "text/plain");
    } else if (hits == 2) {
      res.set_content("not json", "text/plain");
    } else {
      res.set_content(reply("<Label>original_statement</Label>").dump(), "application/json");
    }
  });
  AnnotatorConfig cfg;
  cfg.annotator_id = "h";
  cfg.endpoint_url = server.url() + "/v1/chat/completions";
  cfg.model_name = "m";
  cfg.max_retries = 3;
  cfg.initial_backoff = std::chrono::milliseconds(0);
  Annotator a(cfg, make_backend(cfg));
  const auto r = a.annotate(templates::own_statement(), {{"ABSTRACT", "a"}, {"INTRODUCTION", "i"}, {"SENTENCE", "s"}},
                            {}, label_parser({"original_statement", "not_original_statement"}));
  REQUIRE(r.ok());
  CHECK(r.attempts == 3);
  CHECK(hits == 3);
}

TEST_CASE("unreachable endpoint is a transport error") {
  HttpChatBackend backend("http://127.0.0.1:1", std::nullopt);
  ChatRequest r;
  r.model = "m";
  r.user_prompt = "x";
  try {
    backend.complete(r);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kTransport);
  }
}

TEST_CASE("response_text handles string and part-list content") {
  CHECK(HttpChatBackend::response_text(reply("abc")) == "abc");
  const json parts = {{"choices",
                       json::array({{{"message",
                                      {{"content", json::array({{{"type", "text"}, {"text", "a"}},
                                                                {{"type", "text"}, {"text", "b"}}})}}}}})}};
  CHECK(HttpChatBackend::response_text(parts) == "ab");
  CHECK_THROWS_AS(HttpChatBackend::response_text(json::object()), Error);
}

TEST_CASE("endpoint scheme is checked") {
  CHECK_THROWS_AS(HttpChatBackend("localhost:8000", std::nullopt), Error);
  CHECK_NOTHROW(HttpChatBackend("https://example.invalid/v1/chat/completions", std::nullopt));
}
