#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include "conflictqa/llm/backend.hpp"

namespace conflictqa::llm {

/// Disk cache of completions, one file per key under the cache root. The key
/// is a stable hash of (backend id, model, system, user, temperature,
/// max_tokens); the filename is the hex of that hash. Entries are written
/// atomically (write-then-rename), so concurrent readers and writers are safe.
/// Corrupt entries count as misses and emit a warning.
class CompletionCache {
 public:
  explicit CompletionCache(std::filesystem::path root);

  static std::string key(const std::string& backend_id, const CompletionRequest& request);

  std::optional<Completion> lookup(const std::string& key) const;
  void store(const std::string& key, const CompletionRequest& request,
             const Completion& completion);

  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
};

/// Cache-through completion: a hit returns the stored completion with
/// cached=true and performs zero backend calls; a miss delegates to
/// complete() and stores the result.
Completion cached_complete(CompletionCache& cache, Backend& backend,
                           const CompletionRequest& request, const RetryPolicy& retry = {});

}  // namespace conflictqa::llm
