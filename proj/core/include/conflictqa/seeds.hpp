#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "conflictqa/types.hpp"

namespace conflictqa {

enum class SeedFormat { Generic, WebQsp, Cwq };

struct SeedLoadReport {
  std::size_t loaded = 0;
  std::vector<std::string> skipped;  // "id: reason"
};

/// Loads and normalizes seed questions.
///   Generic: JSONL of {id, question, topic_entity, answers, hops|setting}
///     where topic_entity/answers entries are strings or {id, label}.
///   WebQsp: the released JSON layout ({"Questions": [...]}); the first parse
///     supplies topic entity and answers, inferential-chain length splits the
///     setting.
///   Cwq: JSON array with ID/question/answers; entries must carry an
///     annotated topic entity (topic_entity or topic_entity_name), otherwise
///     they are skipped and reported. Setting defaults to comp.
/// Questions missing a topic entity or any gold answer are skipped and
/// reported, never guessed.
std::vector<Question> load_seeds(const std::filesystem::path& path, SeedFormat format,
                                 SeedLoadReport* report = nullptr);

/// Normalized seed store, one question per JSONL line.
void write_seed_store(const std::filesystem::path& path, std::span<const Question> questions);
std::vector<Question> read_seed_store(const std::filesystem::path& path);

}  // namespace conflictqa
