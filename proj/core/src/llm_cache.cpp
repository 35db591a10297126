#include "conflictqa/llm/cache.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "conflictqa/error.hpp"

namespace conflictqa::llm {

namespace {

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
  std::uint64_t hash = seed;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

CompletionCache::CompletionCache(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec || !std::filesystem::is_directory(root_)) {
    throw ConfigError("cache root is not a writable directory: " + root_.string());
  }
}

std::string CompletionCache::key(const std::string& backend_id,
                                 const CompletionRequest& request) {
  std::ostringstream canon;
  char temperature[32];
  std::snprintf(temperature, sizeof(temperature), "%.6g", request.temperature);
  canon << backend_id << '\x1f' << request.model << '\x1f'
        << (request.system ? *request.system : std::string("\x00", 1)) << '\x1f' << request.user
        << '\x1f' << temperature << '\x1f' << request.max_tokens;
  const std::string data = canon.str();
  // Two independent FNV passes make a 128-bit key; 32 hex chars.
  return hex64(fnv1a64(data, 0xcbf29ce484222325ULL)) +
         hex64(fnv1a64(data, 0x9e3779b97f4a7c15ULL));
}

std::optional<Completion> CompletionCache::lookup(const std::string& key) const {
  auto path = root_ / (key + ".json");
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;

  try {
    nlohmann::json j = nlohmann::json::parse(in);
    Completion c;
    c.text = j.at("text").get<std::string>();
    c.backend_id = j.at("backend_id").get<std::string>();
    c.raw = j.value("raw", std::string());
    c.empty_response = j.value("empty_response", false);
    c.cached = true;
    return c;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "warning: corrupt cache entry " << path.string() << " (" << e.what()
              << "), treating as miss\n";
    return std::nullopt;
  }
}

void CompletionCache::store(const std::string& key, const CompletionRequest& request,
                            const Completion& completion) {
  nlohmann::ordered_json j;
  j["text"] = completion.text;
  j["backend_id"] = completion.backend_id;
  j["raw"] = completion.raw;
  j["empty_response"] = completion.empty_response;
  j["model"] = request.model;
  j["tag"] = request.tag;

  auto path = root_ / (key + ".json");
  auto tmp = root_ / (key + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write cache entry: " + tmp.string());
    out << j.dump();
  }
  std::filesystem::rename(tmp, path);
}

Completion cached_complete(CompletionCache& cache, Backend& backend,
                           const CompletionRequest& request, const RetryPolicy& retry) {
  const std::string key = CompletionCache::key(backend.id(), request);
  if (auto hit = cache.lookup(key)) return *hit;

  Completion fresh = complete(backend, request, retry);
  cache.store(key, request, fresh);
  return fresh;
}

}  // namespace conflictqa::llm
