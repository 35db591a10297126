#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conflictqa/llm/backend.hpp"
#include "conflictqa/llm/mock.hpp"

namespace conflictqa::llm {

/// One named backend in the config file. The documented key set for remote
/// backends is {name, base_url, model, api_key_env, rpm, timeout_s}; the
/// optional `kind` selects deterministic local backends used for scripted
/// builds and tests:
///   "openai"         OpenAI-compatible HTTP endpoint (default)
///   "scripted-build" deterministic pipeline generator (see scripted_build.hpp)
///   "script-rules"   ordered substring rules -> responses
///   "believer"       first-evidence-believer probe (candidates injected at load)
struct BackendConfig {
  std::string name;
  std::string kind = "openai";
  std::string base_url;
  std::string model;
  std::string api_key_env;
  int rpm = 60;
  int timeout_s = 30;
  std::vector<MockRule> rules;
  std::optional<std::string> default_response;
  std::map<std::string, std::string> substitutions;  // scripted-build answer table
};

struct GatewayConfig {
  std::vector<BackendConfig> backends;
  std::filesystem::path cache_root = ".conflictqa-cache";

  const BackendConfig& backend(const std::string& name) const;
};

GatewayConfig load_gateway_config(const std::filesystem::path& path);

/// Instantiates a configured backend. `believer_candidates` feeds the
/// believer kind; other kinds ignore it.
BackendPtr make_backend(const BackendConfig& config,
                        std::vector<std::string> believer_candidates = {});

}  // namespace conflictqa::llm
