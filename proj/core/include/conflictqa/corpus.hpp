#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "conflictqa/types.hpp"

namespace conflictqa {

/// Pre-fetched article corpus mapping entity ids to article text. Two input
/// layouts: a directory of `<entity_id>.txt` files or a JSONL of
/// {entity, text}.
class TextCorpus {
 public:
  TextCorpus() = default;
  explicit TextCorpus(std::map<std::string, std::string> articles)
      : articles_(std::move(articles)) {}

  static TextCorpus load_directory(const std::filesystem::path& dir);
  static TextCorpus load_jsonl(const std::filesystem::path& path);
  /// Dispatches on the path: directory -> per-entity files, file -> JSONL.
  static TextCorpus load(const std::filesystem::path& path);

  std::optional<std::string> article(const std::string& entity_id) const;
  std::size_t size() const { return articles_.size(); }

 private:
  std::map<std::string, std::string> articles_;
};

/// First non-blank paragraph of the entity's article as a Positive passage
/// with the subject set (internal newlines collapsed to spaces); nullopt when
/// the entity has no article.
std::optional<Passage> extract_summary(const TextCorpus& corpus, const Entity& entity,
                                       const TokenCounter& tokens = default_token_counter());

}  // namespace conflictqa
