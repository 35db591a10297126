#pragma once

#include <string>
#include <string_view>

namespace conflictqa {

/// SQuAD-style answer normalization: lowercase, drop punctuation, drop the
/// articles {a, an, the}, collapse whitespace. Used for answer-set membership
/// everywhere (scoring, deduplication, conflict grounding checks).
std::string normalize_answer(std::string_view text);

}  // namespace conflictqa
