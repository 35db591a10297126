#pragma once

#include <atomic>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conflictqa/llm/backend.hpp"

namespace conflictqa::llm {

struct MockRule {
  /// Substring matched against the user message (and tag, as a convenience).
  std::string match;
  std::string response;
};

/// Deterministic rule-table backend: first matching rule wins; no match falls
/// back to the default response or, absent one, raises naming the request tag.
/// Never touches the network. `fail_first_n` injects transient failures for
/// retry tests.
class ScriptMock : public Backend {
 public:
  ScriptMock(std::string id, std::vector<MockRule> rules,
             std::optional<std::string> default_response = std::nullopt);

  std::string id() const override { return id_; }
  Completion complete_once(const CompletionRequest& request) override;

  void fail_first(int n) { fail_first_n_ = n; }
  int calls() const { return calls_.load(); }

 private:
  std::string id_;
  std::vector<MockRule> rules_;
  std::optional<std::string> default_response_;
  std::atomic<int> calls_{0};
  std::atomic<int> fail_first_n_{0};
};

/// Builds a script mock per the ordered-rules contract. Rules must be
/// non-empty unless a default response is supplied.
BackendPtr script_mock(std::vector<MockRule> rules,
                       std::optional<std::string> default_response = std::nullopt,
                       std::string id = "mock");

/// Arbitrary deterministic function backend, for test oracles that need to
/// compute on the prompt.
class FnBackend : public Backend {
 public:
  using Fn = std::function<std::string(const CompletionRequest&)>;
  FnBackend(std::string id, Fn fn) : id_(std::move(id)), fn_(std::move(fn)) {}

  std::string id() const override { return id_; }
  Completion complete_once(const CompletionRequest& request) override {
    ++calls_;
    Completion c;
    c.text = fn_(request);
    c.backend_id = id_;
    c.empty_response = c.text.empty();
    return c;
  }
  int calls() const { return calls_.load(); }

 private:
  std::string id_;
  Fn fn_;
  std::atomic<int> calls_{0};
};

/// The ordering probe: answers with whichever candidate surfaces earliest in
/// the prompt's evidence section (the text after the first "Evidence:"
/// marker), so flipping the evidence order flips its answer.
BackendPtr first_evidence_believer(std::vector<std::string> candidates,
                                   std::string id = "believer");

/// Wrapper that counts delegated calls; cache-idempotence tests assert zero.
class CountingBackend : public Backend {
 public:
  explicit CountingBackend(BackendPtr inner) : inner_(std::move(inner)) {}
  std::string id() const override { return inner_->id(); }
  Completion complete_once(const CompletionRequest& request) override {
    ++calls_;
    return inner_->complete_once(request);
  }
  int calls() const { return calls_.load(); }

 private:
  BackendPtr inner_;
  std::atomic<int> calls_{0};
};

}  // namespace conflictqa::llm
