#pragma once

#include <span>
#include <string>

#include "conflictqa/types.hpp"

namespace conflictqa::build_prompts {

// Request tags for construction-time generator calls. The scripted build
// backend dispatches on these.
inline constexpr const char* kSupportCheckTag = "support_check";
inline constexpr const char* kRewriteTag = "rewrite_coverage";
inline constexpr const char* kIncorrectAnswersTag = "incorrect_answers";
inline constexpr const char* kNegativeTextTag = "negative_text";
inline constexpr const char* kPathJudgeTag = "path_judge";

std::string render_triple(const Triple& triple);
std::string render_path(const TriplePath& path);

/// Relation labels are often snake_case ids; prose rendering spaces them out.
std::string humanize_relation(const std::string& label);

std::string support_check_prompt(const Passage& passage, const Triple& triple);
std::string rewrite_prompt(const Passage& passage, std::span<const Triple> missing);
std::string incorrect_answers_prompt(const Question& question,
                                     std::span<const std::string> avoid);
std::string negative_text_prompt(const Entity& subject, std::span<const Triple> facts);
std::string path_judge_prompt(const Question& question, const TriplePath& path);

}  // namespace conflictqa::build_prompts
