#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>

namespace conflictqa::llm {

struct CompletionRequest {
  std::string model;
  std::optional<std::string> system;
  std::string user;
  double temperature = 0.0;
  int max_tokens = 1024;
  /// Free-form provenance tag ("support_check", "qa", "xot_stage1", ...).
  std::string tag;
};

struct Completion {
  std::string text;
  std::string backend_id;
  std::chrono::milliseconds latency{0};
  bool cached = false;
  /// Opaque provider payload (HTTP body for remote backends, empty for mocks).
  std::string raw;
  /// Set when the provider returned an empty message.
  bool empty_response = false;
};

/// A chat-completion endpoint: remote HTTP provider or deterministic mock.
/// Handles are shareable; complete_once must be safe to call concurrently.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string id() const = 0;
  /// Single attempt, no retries. Throws BackendError (transient or not).
  virtual Completion complete_once(const CompletionRequest& request) = 0;
};

using BackendPtr = std::shared_ptr<Backend>;

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds base_delay{250};
  /// Tests zero this out; production backoff doubles per attempt.
  bool sleep_between = true;
};

/// Completes with retries: transient failures back off exponentially up to the
/// cap, non-transient failures (auth included) surface immediately. An empty
/// user message is a precondition violation.
Completion complete(Backend& backend, const CompletionRequest& request,
                    const RetryPolicy& retry = {});

}  // namespace conflictqa::llm
