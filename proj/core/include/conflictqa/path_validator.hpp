#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "conflictqa/llm/session.hpp"
#include "conflictqa/types.hpp"

namespace conflictqa {

struct PathVerdict {
  std::string validator_id;
  bool accept = false;
  std::string note;
};

struct ValidatorVerdict {
  TriplePath path;
  std::vector<PathVerdict> verdicts;

  /// A path is retained only when every configured validator accepts it.
  bool accepted() const {
    if (verdicts.empty()) return false;
    for (const auto& v : verdicts) {
      if (!v.accept) return false;
    }
    return true;
  }
};

/// One judge of candidate evidence paths. The three modes stand in for the
/// paper-style expert panel: scripted rules for tests and fixture builds, an
/// LLM judge for batch builds, and a manual-review CSV round trip.
class PathValidator {
 public:
  virtual ~PathValidator() = default;
  virtual std::string id() const = 0;
  virtual PathVerdict judge(const Question& question, const TriplePath& path,
                            std::size_t path_index) = 0;
};

using PathValidatorPtr = std::shared_ptr<PathValidator>;

struct ScriptedRejectRule {
  std::string question_id;          // empty matches every question
  std::string relation_substring;   // rejects paths whose rendered relations contain it
  std::string note;
};

/// Accepts everything except paths matching a reject rule.
class ScriptedPathValidator : public PathValidator {
 public:
  explicit ScriptedPathValidator(std::vector<ScriptedRejectRule> rules = {},
                                 std::string id = "scripted");
  std::string id() const override { return id_; }
  PathVerdict judge(const Question& question, const TriplePath& path,
                    std::size_t path_index) override;

 private:
  std::string id_;
  std::vector<ScriptedRejectRule> rules_;
};

/// CSV rules: question_id,relation_substring[,note]; header line optional.
std::vector<ScriptedRejectRule> load_reject_rules(const std::filesystem::path& path);

/// Asks the configured backend whether the path supports the question
/// (yes/no). Backend failures propagate so the pipeline can abort the
/// question rather than silently accept.
class LlmPathValidator : public PathValidator {
 public:
  LlmPathValidator(llm::LlmSession session, std::string id = "llm-judge");
  std::string id() const override { return id_; }
  PathVerdict judge(const Question& question, const TriplePath& path,
                    std::size_t path_index) override;

 private:
  llm::LlmSession session_;
  std::string id_;
};

/// Manual review round trip. Export writes one row per candidate path with
/// columns `question_id, path_index, rendered_path, verdict(accept/reject),
/// note`; import reads rows back (verdict column filled in by the reviewer).
struct ManualReviewRow {
  std::string question_id;
  std::size_t path_index = 0;
  std::string rendered_path;
  std::string verdict;  // "accept" | "reject" | "" (pending)
  std::string note;
};

void export_review_csv(const std::filesystem::path& path,
                       std::span<const ManualReviewRow> rows);
std::vector<ManualReviewRow> import_review_csv(const std::filesystem::path& path);

/// Judges from imported verdicts; paths without a row (or still pending) are
/// flagged pending via PathVerdict.note = "pending" and rejected.
class ManualPathValidator : public PathValidator {
 public:
  explicit ManualPathValidator(std::vector<ManualReviewRow> rows, std::string id = "manual");
  std::string id() const override { return id_; }
  PathVerdict judge(const Question& question, const TriplePath& path,
                    std::size_t path_index) override;

  bool has_verdict(const std::string& question_id, std::size_t path_index) const;

 private:
  std::string id_;
  std::map<std::pair<std::string, std::size_t>, ManualReviewRow> rows_;
};

}  // namespace conflictqa
