#include "conflictqa/provenance.hpp"

#include <nlohmann/json.hpp>

#include "conflictqa/error.hpp"

namespace conflictqa {

ProvenanceLog::ProvenanceLog(const std::filesystem::path& path) {
  out_.open(path, std::ios::app);
  if (!out_) throw ConfigError("cannot open provenance log: " + path.string());
}

void ProvenanceLog::record(const std::string& question_id, const std::string& op,
                           const llm::CompletionRequest& request,
                           const llm::Completion& completion) {
  nlohmann::ordered_json j{
      {"question_id", question_id}, {"op", op},
      {"prompt", request.user},     {"response", completion.text},
      {"backend", completion.backend_id}, {"cached", completion.cached},
  };
  std::lock_guard<std::mutex> lock(mutex_);
  out_ << j.dump() << '\n';
  out_.flush();
}

void ProvenanceLog::note(const std::string& question_id, const std::string& op,
                         const std::string& detail) {
  nlohmann::ordered_json j{{"question_id", question_id}, {"op", op}, {"note", detail}};
  std::lock_guard<std::mutex> lock(mutex_);
  out_ << j.dump() << '\n';
  out_.flush();
}

}  // namespace conflictqa
