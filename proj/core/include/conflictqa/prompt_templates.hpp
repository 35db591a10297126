#pragma once

namespace conflictqa::templates {

// Versioned prompt text assets. Placeholder slots: {question}, {evidence},
// {format_contract}. Bump the version when any wording changes so cached
// completions keyed on prompt text never alias across revisions.
inline constexpr const char* kVersion = "qa-templates/v1";

// Required verbatim in every DirectQA/CoT system prompt.
inline constexpr const char* kConflictAwareSentence =
    "The provided triples and texts may contain conflicting or inconsistent information.";

inline constexpr const char* kQaSystem =
    "You are a question answering assistant. Answer strictly from the evidence "
    "given to you. The provided triples and texts may contain conflicting or "
    "inconsistent information. Weigh the evidence carefully before answering.";

inline constexpr const char* kQaUser =
    "Question: {question}\n"
    "\n"
    "Evidence:\n"
    "{evidence}\n"
    "\n"
    "{format_contract}";

inline constexpr const char* kCotUser =
    "Question: {question}\n"
    "\n"
    "Evidence:\n"
    "{evidence}\n"
    "\n"
    "Think through the evidence step by step, writing out your reasoning before "
    "you decide.\n"
    "\n"
    "{format_contract}";

inline constexpr const char* kAnswerFormatContract =
    "Finish your reply with exactly one line of this form, listing every final "
    "answer:\n"
    "ANSWERS: [\"first answer\", \"second answer\"]";

inline constexpr const char* kXotStage1System =
    "You are a careful question answering assistant. You list answer candidates; "
    "you do not decide between them.";

inline constexpr const char* kXotStage1User =
    "Question: {question}\n"
    "\n"
    "Evidence:\n"
    "{evidence}\n"
    "\n"
    "Enumerate up to {k} candidate answers supported anywhere in the evidence. Do "
    "not judge correctness and do not prune candidates that disagree with each "
    "other. For each candidate, add a short explanation grounded in the evidence, "
    "without naming where the evidence came from.\n"
    "\n"
    "Write one line per candidate, formatted exactly as\n"
    "CANDIDATE: <answer> | BECAUSE: <explanation>";

inline constexpr const char* kXotStage2System =
    "You are a careful question answering assistant. You resolve disagreements "
    "between candidate answers using only their explanations.";

inline constexpr const char* kXotStage2User =
    "Question: {question}\n"
    "\n"
    "Candidate answers with explanations:\n"
    "{candidates}\n"
    "\n"
    "Some explanations may contradict each other. Think over those disagreements "
    "and infer the most appropriate final answer or answers.\n"
    "\n"
    "{format_contract}";

}  // namespace conflictqa::templates
