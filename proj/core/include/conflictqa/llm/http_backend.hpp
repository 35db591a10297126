#pragma once

#include <memory>
#include <string>

#include "conflictqa/llm/backend.hpp"
#include "conflictqa/llm/rate_limiter.hpp"

namespace conflictqa::llm {

struct HttpBackendConfig {
  std::string name;
  std::string base_url;  // e.g. https://api.openai.com/v1
  std::string model;
  std::string api_key_env;  // name of the env var holding the bearer key
  int rpm = 60;
  int timeout_s = 30;
};

/// OpenAI-compatible chat-completions client: POST {base_url}/chat/completions
/// with model/messages/temperature/max_tokens and bearer auth read from the
/// configured environment variable. 401/403 raise AuthError; 408/429/5xx and
/// transport failures raise transient BackendError so complete() retries them.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  ~HttpBackend() override;

  std::string id() const override;
  Completion complete_once(const CompletionRequest& request) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace conflictqa::llm
