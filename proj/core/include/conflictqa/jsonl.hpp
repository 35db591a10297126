#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "conflictqa/types.hpp"

namespace conflictqa {

/// One instance per line. Field names are fixed wire contract:
///   id, question, topic_entity, setting ("non_comp"|"comp"),
///   scenario ("positive"|"triple_pos"|"text_pos"|"triple_conf"|"text_conf"),
///   gold_answers, incorrect_answers (array or null),
///   kg_evidence [{head, relation, tail, polarity}],
///   text_evidence [{id, subject, text, polarity}], provenance (object).
/// Triple endpoints and relations are written by display label; token counts
/// are recomputed on load with the configured tokenizer.
std::string instance_to_json_line(const BenchmarkInstance& instance);

BenchmarkInstance instance_from_json_line(const std::string& line,
                                          const TokenCounter& tokens = default_token_counter());

std::vector<BenchmarkInstance> read_instances(const std::filesystem::path& path,
                                              const TokenCounter& tokens = default_token_counter());

void write_instances(const std::filesystem::path& path,
                     std::span<const BenchmarkInstance> instances);

}  // namespace conflictqa
