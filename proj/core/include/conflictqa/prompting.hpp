#pragma once

#include <string>

#include "conflictqa/llm/backend.hpp"
#include "conflictqa/types.hpp"

namespace conflictqa {

enum class Strategy { DirectQA, CoT, XoTStage1, XoTStage2 };
enum class Ordering { ConflictFirst, ConflictLast };

std::string_view to_string(Strategy s);
std::string_view to_string(Ordering o);

struct PromptPlan {
  Strategy strategy = Strategy::DirectQA;
  Ordering ordering = Ordering::ConflictFirst;
  std::string system;
  std::string user;
};

/// Renders the bundle into the prompt's evidence block. Triples become one
/// `(head, relation, tail)` line each; passages become numbered blocks. Items
/// are grouped by polarity -- Conflicting material before all Positive
/// material under ConflictFirst, after it under ConflictLast -- and KG items
/// precede text items inside each polarity group, preserving stored order.
/// Output is deterministic and never names polarities.
std::string serialize_evidence(const EvidenceBundle& bundle, Ordering ordering);

/// DirectQA and CoT prompt assembly: the conflict-aware sentence sits verbatim
/// in the system text, the user text embeds the question exactly once plus the
/// serialized evidence and the answer-format contract. CoT differs from
/// DirectQA only by the step-by-step instruction block.
PromptPlan build_prompt(const Question& question, const EvidenceBundle& bundle,
                        Strategy strategy, Ordering ordering);

enum class ParsePath { FinalLine, BracketList, LastLine, Empty };
std::string_view to_string(ParsePath p);

struct ParsedAnswers {
  AnswerSet answers;  // normalized, deduplicated
  ParsePath path = ParsePath::Empty;
};

/// Extracts the answer set from a completion. Primary path reads the mandated
/// `ANSWERS: ["..."]` line (last occurrence); fallbacks take the last
/// bracketed list, then the last non-empty line as a single answer. Never
/// fails; an empty completion yields an empty set.
ParsedAnswers parse_answers_detailed(const std::string& completion_text);
AnswerSet parse_answers(const llm::Completion& completion);

}  // namespace conflictqa
