#include "conflictqa/llm/http_backend.hpp"

#include <chrono>
#include <cstdlib>

#include <nlohmann/json.hpp>

#ifndef CONFLICTQA_NO_TLS
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

#include "conflictqa/error.hpp"

namespace conflictqa::llm {

namespace {

// Splits "https://host:port/v1" into origin and path prefix for httplib.
struct SplitUrl {
  std::string origin;
  std::string prefix;
};

SplitUrl split_url(const std::string& base_url) {
  auto scheme_end = base_url.find("://");
  std::size_t path_start =
      scheme_end == std::string::npos ? base_url.find('/') : base_url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {base_url, ""};
  std::string prefix = base_url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {base_url.substr(0, path_start), prefix};
}

}  // namespace

struct HttpBackend::Impl {
  HttpBackendConfig config;
  SplitUrl url;
  RateLimiter limiter;

  explicit Impl(HttpBackendConfig cfg)
      : config(std::move(cfg)), url(split_url(config.base_url)), limiter(config.rpm) {}

  std::string api_key() const {
    if (config.api_key_env.empty()) return {};
    const char* value = std::getenv(config.api_key_env.c_str());
    return value ? value : std::string();
  }
};

HttpBackend::HttpBackend(HttpBackendConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {
  if (impl_->config.base_url.empty()) {
    throw ConfigError("backend '" + impl_->config.name + "': base_url is required");
  }
}

HttpBackend::~HttpBackend() = default;

std::string HttpBackend::id() const { return impl_->config.name; }

Completion HttpBackend::complete_once(const CompletionRequest& request) {
  impl_->limiter.acquire();

  nlohmann::json messages = nlohmann::json::array();
  if (request.system && !request.system->empty()) {
    messages.push_back({{"role", "system"}, {"content", *request.system}});
  }
  messages.push_back({{"role", "user"}, {"content", request.user}});

  nlohmann::json payload{
      {"model", request.model.empty() ? impl_->config.model : request.model},
      {"messages", messages},
      {"temperature", request.temperature},
      {"max_tokens", request.max_tokens},
  };

  httplib::Client client(impl_->url.origin);
  client.set_connection_timeout(impl_->config.timeout_s, 0);
  client.set_read_timeout(impl_->config.timeout_s, 0);

  httplib::Headers headers{{"Content-Type", "application/json"}};
  if (auto key = impl_->api_key(); !key.empty()) {
    headers.emplace("Authorization", "Bearer " + key);
  }

  auto started = std::chrono::steady_clock::now();
  auto result = client.Post(impl_->url.prefix + "/chat/completions", headers, payload.dump(),
                            "application/json");
  auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);

  if (!result) {
    throw BackendError("backend '" + id() + "': transport failure (" +
                           httplib::to_string(result.error()) + ")",
                       true);
  }
  if (result->status == 401 || result->status == 403) {
    throw AuthError("backend '" + id() + "': authentication rejected (HTTP " +
                    std::to_string(result->status) + "); check $" + impl_->config.api_key_env);
  }
  if (result->status == 408 || result->status == 429 || result->status >= 500) {
    throw BackendError("backend '" + id() + "': HTTP " + std::to_string(result->status), true);
  }
  if (result->status != 200) {
    throw BackendError("backend '" + id() + "': HTTP " + std::to_string(result->status) + ": " +
                           result->body,
                       false);
  }

  Completion completion;
  completion.backend_id = id();
  completion.latency = latency;
  completion.raw = result->body;
  try {
    auto j = nlohmann::json::parse(result->body);
    const auto& choices = j.at("choices");
    if (!choices.is_array() || choices.empty()) {
      throw BackendError("backend '" + id() + "': response has no choices", false);
    }
    const auto& message = choices.at(0).at("message");
    completion.text = message.value("content", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw BackendError("backend '" + id() + "': unparseable response: " + e.what(), false);
  }
  completion.empty_response = completion.text.empty();
  return completion;
}

}  // namespace conflictqa::llm
