#pragma once

#include <string>

#include "conflictqa/llm/backend.hpp"
#include "conflictqa/llm/cache.hpp"

namespace conflictqa::llm {

/// Bundles a backend with its optional cache, retry policy, and default
/// decoding settings. Everything above the gateway (builders, evaluation,
/// XoT) goes through run().
struct LlmSession {
  BackendPtr backend;
  CompletionCache* cache = nullptr;
  RetryPolicy retry;
  std::string model;
  double temperature = 0.0;
  int max_tokens = 1024;

  Completion run(CompletionRequest request) const {
    if (request.model.empty()) request.model = model;
    if (cache) return cached_complete(*cache, *backend, request, retry);
    return complete(*backend, request, retry);
  }

  CompletionRequest make_request(std::string user, std::string tag) const {
    CompletionRequest request;
    request.model = model;
    request.user = std::move(user);
    request.temperature = temperature;
    request.max_tokens = max_tokens;
    request.tag = std::move(tag);
    return request;
  }
};

}  // namespace conflictqa::llm
