#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "conflictqa/types.hpp"

namespace conflictqa {

enum class ValidationCode {
  EMPTY_QUESTION_TEXT,
  EMPTY_TOPIC_ENTITY,
  EMPTY_GOLD_ANSWERS,
  EMPTY_BUNDLE,
  EMPTY_TRIPLE_COMPONENT,
  EMPTY_PASSAGE_TEXT,
  TOKEN_COUNT_INCONSISTENT,
  MIXED_POLARITY_IN_POSITIVE,
  COMP_SCENARIO_ON_NONCOMP,
  TRIPLECONF_WITHOUT_CONFLICTING_TRIPLE,
  TRIPLECONF_WITH_CONFLICTING_PASSAGE,
  TEXTCONF_WITHOUT_CONFLICTING_PASSAGE,
  TEXTCONF_WITH_CONFLICTING_TRIPLE,
  MISSING_INCORRECT_ANSWERS,
  INCORRECT_ANSWER_IS_GOLD,
  CONFLICT_NOT_GROUNDED,
};

std::string_view to_string(ValidationCode code);

using ValidationReport = std::vector<ValidationCode>;

/// Pure structural check of every BenchmarkInstance invariant. Violations are
/// data, not failures: the report lists each violated invariant once, in enum
/// order, and is empty for a valid instance.
ValidationReport validate_instance(const BenchmarkInstance& instance,
                                   const TokenCounter& tokens = default_token_counter());

}  // namespace conflictqa
