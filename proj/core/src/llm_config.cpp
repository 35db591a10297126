#include "conflictqa/llm/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "conflictqa/error.hpp"
#include "conflictqa/llm/http_backend.hpp"
#include "conflictqa/scripted_build.hpp"

namespace conflictqa::llm {

const BackendConfig& GatewayConfig::backend(const std::string& name) const {
  for (const auto& b : backends) {
    if (b.name == name) return b;
  }
  throw ConfigError("no backend named '" + name + "' in config");
}

GatewayConfig load_gateway_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid config JSON in " + path.string() + ": " + e.what());
  }

  GatewayConfig config;
  if (j.contains("cache_root")) config.cache_root = j.at("cache_root").get<std::string>();

  if (!j.contains("backends") || !j.at("backends").is_array()) {
    throw ConfigError(path.string() + ": expected a top-level \"backends\" array");
  }
  for (const auto& bj : j.at("backends")) {
    BackendConfig b;
    if (!bj.contains("name")) throw ConfigError("backend entry without a name");
    b.name = bj.at("name").get<std::string>();
    b.kind = bj.value("kind", std::string("openai"));
    b.base_url = bj.value("base_url", std::string());
    b.model = bj.value("model", std::string());
    b.api_key_env = bj.value("api_key_env", std::string());
    b.rpm = bj.value("rpm", 60);
    b.timeout_s = bj.value("timeout_s", 30);
    if (bj.contains("rules")) {
      for (const auto& rj : bj.at("rules")) {
        b.rules.push_back({rj.at("match").get<std::string>(),
                           rj.at("response").get<std::string>()});
      }
    }
    if (bj.contains("default_response")) {
      b.default_response = bj.at("default_response").get<std::string>();
    }
    if (bj.contains("substitutions")) {
      for (const auto& [key, value] : bj.at("substitutions").items()) {
        b.substitutions[key] = value.get<std::string>();
      }
    }
    if (bj.contains("substitutions_file")) {
      auto file = path.parent_path() / bj.at("substitutions_file").get<std::string>();
      std::ifstream sub_in(file);
      if (!sub_in) throw ConfigError("cannot open substitutions file: " + file.string());
      nlohmann::json subs;
      try {
        subs = nlohmann::json::parse(sub_in);
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid substitutions JSON in " + file.string() + ": " + e.what());
      }
      for (const auto& [key, value] : subs.items()) {
        b.substitutions[key] = value.get<std::string>();
      }
    }
    config.backends.push_back(std::move(b));
  }
  return config;
}

BackendPtr make_backend(const BackendConfig& config,
                        std::vector<std::string> believer_candidates) {
  if (config.kind == "openai") {
    HttpBackendConfig http;
    http.name = config.name;
    http.base_url = config.base_url;
    http.model = config.model;
    http.api_key_env = config.api_key_env;
    http.rpm = config.rpm;
    http.timeout_s = config.timeout_s;
    return std::make_shared<HttpBackend>(std::move(http));
  }
  if (config.kind == "scripted-build") {
    std::map<std::string, std::string> subs(config.substitutions.begin(),
                                            config.substitutions.end());
    return std::make_shared<ScriptedBuildBackend>(std::move(subs), config.name);
  }
  if (config.kind == "script-rules") {
    return script_mock(config.rules, config.default_response, config.name);
  }
  if (config.kind == "believer") {
    return first_evidence_believer(std::move(believer_candidates), config.name);
  }
  throw ConfigError("backend '" + config.name + "': unknown kind '" + config.kind + "'");
}

}  // namespace conflictqa::llm
