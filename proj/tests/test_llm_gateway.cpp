#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "conflictqa/error.hpp"
#include "conflictqa/llm/cache.hpp"
#include "conflictqa/llm/config.hpp"
#include "conflictqa/llm/mock.hpp"

#include "test_util.hpp"

using namespace conflictqa;
using namespace conflictqa::llm;

namespace {

CompletionRequest request_of(const std::string& user, const std::string& tag = "test") {
  CompletionRequest r;
  r.model = "mock-model";
  r.user = user;
  r.tag = tag;
  return r;
}

RetryPolicy fast_retry() {
  RetryPolicy r;
  r.sleep_between = false;
  return r;
}

}  // namespace

TEST_CASE("script mock returns the first matching rule") {
  auto mock = script_mock({{"Question:", "Answer: A"}, {"Question", "Answer: B"}});
  auto completion = complete(*mock, request_of("Question: anything at all"));
  CHECK(completion.text == "Answer: A");
  CHECK(completion.backend_id == "mock");
}

TEST_CASE("no matching rule and no default names the request tag") {
  auto mock = script_mock({{"never-present", "x"}});
  CHECK_THROWS_WITH_AS(complete(*mock, request_of("hello", "my-tag"), fast_retry()),
                       doctest::Contains("my-tag"), BackendError);
}

TEST_CASE("empty user text is a precondition violation") {
  auto mock = script_mock({{"x", "y"}});
  CHECK_THROWS_AS(complete(*mock, request_of("")), std::invalid_argument);
}

TEST_CASE("transient failures are retried with a counter") {
  auto mock = std::make_shared<ScriptMock>(
      "flaky", std::vector<MockRule>{{"ping", "pong"}}, std::nullopt);
  mock->fail_first(2);
  auto completion = complete(*mock, request_of("ping"), fast_retry());
  CHECK(completion.text == "pong");
  CHECK(mock->calls() == 3);  // two failures then success
}

TEST_CASE("retries exhaust into a terminal error") {
  auto mock = std::make_shared<ScriptMock>(
      "dead", std::vector<MockRule>{{"ping", "pong"}}, std::nullopt);
  mock->fail_first(100);
  RetryPolicy retry = fast_retry();
  retry.max_retries = 2;
  CHECK_THROWS_AS(complete(*mock, request_of("ping"), retry), BackendError);
  CHECK(mock->calls() == 3);
}

TEST_CASE("cached_complete hits skip the backend") {
  testutil::TempDir tmp("cache");
  CompletionCache cache(tmp.path);
  auto inner = script_mock({{"ping", "pong"}});
  CountingBackend counted(inner);

  auto first = cached_complete(cache, counted, request_of("ping"), fast_retry());
  CHECK_FALSE(first.cached);
  auto second = cached_complete(cache, counted, request_of("ping"), fast_retry());
  CHECK(second.cached);
  CHECK(second.text == "pong");
  CHECK(counted.calls() == 1);
}

TEST_CASE("cache keys include the decoding settings") {
  auto a = request_of("same text");
  auto b = request_of("same text");
  b.temperature = 0.7;
  CHECK(CompletionCache::key("backend", a) != CompletionCache::key("backend", b));
  auto c = request_of("same text");
  c.max_tokens = 77;
  CHECK(CompletionCache::key("backend", a) != CompletionCache::key("backend", c));
  CHECK(CompletionCache::key("backend", a) == CompletionCache::key("backend", request_of("same text")));
}

TEST_CASE("replayed random requests call the backend once per distinct key") {
  testutil::TempDir tmp("cache-replay");
  CompletionCache cache(tmp.path);
  auto inner = script_mock({}, std::string("ok"));
  CountingBackend counted(inner);

  std::mt19937 rng(11);
  std::vector<CompletionRequest> requests;
  for (int i = 0; i < 100; ++i) {
    auto r = request_of("prompt " + std::to_string(rng() % 25));
    r.temperature = (rng() % 2) ? 0.0 : 1.0;
    requests.push_back(std::move(r));
  }
  std::set<std::string> distinct;
  for (const auto& r : requests) distinct.insert(CompletionCache::key(counted.id(), r));
  for (const auto& r : requests) cached_complete(cache, counted, r, fast_retry());
  CHECK(counted.calls() == static_cast<int>(distinct.size()));

  // Full replay against the warm cache issues zero backend calls.
  int before = counted.calls();
  for (const auto& r : requests) {
    auto c = cached_complete(cache, counted, r, fast_retry());
    CHECK(c.cached);
  }
  CHECK(counted.calls() == before);
}

TEST_CASE("corrupt cache entries degrade to a miss") {
  testutil::TempDir tmp("cache-corrupt");
  CompletionCache cache(tmp.path);
  auto inner = script_mock({{"ping", "pong"}});
  CountingBackend counted(inner);
  auto request = request_of("ping");
  cached_complete(cache, counted, request, fast_retry());

  auto key = CompletionCache::key(counted.id(), request);
  testutil::write_file(tmp.path / (key + ".json"), "{not json");
  auto again = cached_complete(cache, counted, request, fast_retry());
  CHECK_FALSE(again.cached);
  CHECK(counted.calls() == 2);
}

TEST_CASE("first-evidence believer flips with the evidence order") {
  auto believer = first_evidence_believer({"Canberra", "Sydney"});
  auto conflict_first = complete(
      *believer,
      request_of("Question: capital?\n\nEvidence:\n(Australia, capital, Sydney)\nPassage 1: "
                 "Canberra is the capital of Australia.\n"));
  CHECK(conflict_first.text == "ANSWERS: [\"Sydney\"]");

  auto conflict_last = complete(
      *believer,
      request_of("Question: capital?\n\nEvidence:\nPassage 1: Canberra is the capital of "
                 "Australia.\n(Australia, capital, Sydney)\n"));
  CHECK(conflict_last.text == "ANSWERS: [\"Canberra\"]");
}

TEST_CASE("believer only reads the evidence section") {
  auto believer = first_evidence_believer({"Canberra", "Sydney"});
  auto completion = complete(
      *believer, request_of("Sydney Sydney Sydney\n\nEvidence:\n(x, capital, Canberra)\n"));
  CHECK(completion.text == "ANSWERS: [\"Canberra\"]");
}

TEST_CASE("gateway config loads backends and builds them") {
  auto config = load_gateway_config(testutil::fixtures_dir() / "config.json");
  CHECK(config.backends.size() == 4);
  CHECK(config.backend("builder").kind == "scripted-build");
  CHECK(config.backend("builder").substitutions.at("Canberra") == "Sydney");
  CHECK(config.backend("openai").api_key_env == "OPENAI_API_KEY");
  CHECK_THROWS_AS(config.backend("missing"), ConfigError);

  auto mock = make_backend(config.backend("echo-mock"));
  auto completion = complete(*mock, request_of("Question: hm?"));
  CHECK(completion.text == "ANSWERS: [\"unknown\"]");
}
