#pragma once

#include <string>
#include <vector>

#include "conflictqa/llm/session.hpp"
#include "conflictqa/prompting.hpp"
#include "conflictqa/types.hpp"

namespace conflictqa {

struct CandidateExplanation {
  std::string candidate;
  std::string explanation;
};

struct XoTTrace {
  PromptPlan stage1;
  llm::Completion stage1_completion;
  std::vector<CandidateExplanation> candidates;
  bool truncated = false;                     // more than K pairs were parsed
  std::vector<std::string> blocklist_hits;    // source markers found in explanations
  PromptPlan stage2;
  llm::Completion stage2_completion;
  AnswerSet final;
  bool fallback_unfiltered = false;  // stage-2 answers all fell outside the candidates
  std::string error;                 // stage-1 produced nothing parseable
};

/// Stage 1: enumerate up to K (candidate, explanation) pairs from the
/// evidence, no correctness judgment. Pairs beyond K are truncated with a
/// warning in the trace. Zero parseable pairs is an error the caller records
/// as unanswered. Explanations are scanned against the evidence-source marker
/// blocklist; hits are logged in the trace, never fatal.
std::vector<CandidateExplanation> enumerate_candidates(const Question& question,
                                                       const EvidenceBundle& bundle,
                                                       const llm::LlmSession& session, int k,
                                                       Ordering ordering, XoTTrace* trace);

/// Stage 2: select final answers from the candidate/explanation pairs alone
/// (no raw evidence). Parsed answers are filtered to the candidate set by
/// normalized match; an empty post-filter set falls back to the unfiltered
/// parse with a warning flag.
AnswerSet select_final(const Question& question,
                       const std::vector<CandidateExplanation>& candidates,
                       const llm::LlmSession& session, XoTTrace* trace);

/// Composes the two stages. A stage-1 failure yields an empty answer set and
/// a trace carrying the error.
std::pair<AnswerSet, XoTTrace> run_xot(const Question& question, const EvidenceBundle& bundle,
                                       const llm::LlmSession& session, int k,
                                       Ordering ordering = Ordering::ConflictFirst);

/// Markers stage-1 explanations are instructed to avoid.
const std::vector<std::string>& xot_source_blocklist();

}  // namespace conflictqa
