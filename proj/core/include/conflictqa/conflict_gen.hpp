#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conflictqa/llm/session.hpp"
#include "conflictqa/provenance.hpp"
#include "conflictqa/types.hpp"

namespace conflictqa {

/// Gold answer -> synthesized incorrect answer, one substitution per gold
/// answer. Incorrect answers never collide with any gold answer after
/// normalization; synthesized entities carry `neg:<slug>` ids since they need
/// not exist in the KG.
struct CorruptionMap {
  std::vector<std::pair<Entity, Entity>> substitutions;  // (gold, incorrect)

  const Entity* incorrect_for(const std::string& gold_id) const;
  const Entity* gold_for(const std::string& incorrect_id) const;
  AnswerSet incorrect_answers() const;
  CorruptionMap inverse() const;
};

/// Prompts the generator for one plausible-but-wrong alternative per gold
/// answer, re-prompting (with the rejected strings listed) when an alternative
/// collides with a gold answer or duplicates another substitution. Raw
/// generator output lands in the provenance log. Exhausted retries raise.
CorruptionMap synthesize_incorrect_answers(const Question& question,
                                           const llm::LlmSession& session,
                                           ProvenanceLog* log = nullptr, int max_retries = 2);

/// Entity replacement preserving relational structure: each input triple
/// containing a mapped entity is emitted with that endpoint replaced and
/// polarity Conflicting; untouched triples are omitted.
std::vector<Triple> corrupt_triples(std::span<const Triple> triples, const CorruptionMap& map);

/// One Wikipedia-style passage per substituted incorrect answer, grouping all
/// of that answer's negative triples. Post-check: each passage must mention
/// the head and tail labels of every grounding triple; retries then errors.
std::vector<Passage> generate_negative_text(std::span<const Triple> negative_triples,
                                            const CorruptionMap& map,
                                            const llm::LlmSession& session,
                                            ProvenanceLog* log = nullptr,
                                            const std::string& question_id = "",
                                            int max_retries = 2,
                                            const TokenCounter& tokens = default_token_counter());

/// Instantiates a conflicting reasoning scenario from a positive instance.
/// Non-COMP replaces the corrupted side wholesale; COMP appends the negative
/// evidence to its side. Compatibility: TriplePos -> TextConf, TextPos ->
/// TripleConf, Non-COMP Positive -> either.
BenchmarkInstance instantiate_conflict(const BenchmarkInstance& positive,
                                       const CorruptionMap& map,
                                       std::span<const Triple> negative_triples,
                                       std::span<const Passage> negative_passages,
                                       Scenario conflict);

}  // namespace conflictqa
