#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>

#include "conflictqa/llm/backend.hpp"

namespace conflictqa {

/// Append-only JSONL log of generator calls made while building a corpus:
/// one record per call with the question id, operation, prompt, and raw
/// response. Append-safe under concurrent per-question builds.
class ProvenanceLog {
 public:
  explicit ProvenanceLog(const std::filesystem::path& path);

  void record(const std::string& question_id, const std::string& op,
              const llm::CompletionRequest& request, const llm::Completion& completion);
  void note(const std::string& question_id, const std::string& op, const std::string& detail);

 private:
  std::mutex mutex_;
  std::ofstream out_;
};

}  // namespace conflictqa
