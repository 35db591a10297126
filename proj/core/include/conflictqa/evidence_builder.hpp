#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conflictqa/kg_store.hpp"
#include "conflictqa/llm/session.hpp"
#include "conflictqa/path_validator.hpp"
#include "conflictqa/provenance.hpp"
#include "conflictqa/types.hpp"

namespace conflictqa {

struct CoverageCheck {
  Passage passage;
  Triple triple;
  bool supported = false;
};

struct KgEvidenceResult {
  std::vector<TriplePath> paths;              // unanimously accepted, in search order
  std::vector<ValidatorVerdict> verdicts;     // one per candidate
  bool discarded = false;                     // no candidate survived
  bool no_candidates = false;                 // search found nothing at all
};

struct KgEvidenceOptions {
  int max_hops = 1;
  std::size_t max_paths = 64;  // shortest-first cap on candidates sent to validators
  bool undirected = false;
};

/// Retrieves candidate paths from the question entity to its gold answers and
/// keeps only those every validator accepts. An empty result means the sample
/// is discarded. Validator backend failures propagate (after the session's
/// retries) so callers abort the question instead of silently accepting.
KgEvidenceResult collect_kg_evidence(const Question& question, const TripleStore& store,
                                     std::span<const PathValidatorPtr> validators,
                                     const KgEvidenceOptions& options = {});

/// True iff the generator judges the triple's fact entailed by the passage.
/// The judgment prompt and raw response are recorded in the provenance log.
/// An unparseable judgment is an error; it never defaults.
bool check_support(const Passage& passage, const Triple& triple, const llm::LlmSession& session,
                   ProvenanceLog* log = nullptr, const std::string& question_id = "");

/// Minimal rewrite incorporating the missing facts. Post-check: the rewritten
/// text must mention, for each missing triple, the endpoint label that is not
/// the passage subject (case-insensitive). Retries the generator N times and
/// then errors. The original text is kept in the returned passage's id-stable
/// provenance note via the log.
Passage rewrite_for_coverage(const Passage& passage, std::span<const Triple> missing,
                             const llm::LlmSession& session, ProvenanceLog* log = nullptr,
                             const std::string& question_id = "", int max_retries = 2);

struct AssembleResult {
  std::vector<BenchmarkInstance> instances;
  std::vector<std::string> notes;  // skipped scenarios and why
};

/// Organizes validated paths and coverage-checked passages into positive
/// reasoning scenarios. Non-COMP questions yield one Positive instance (all
/// path triples + answer passages). COMP questions yield TriplePos (entity
/// passage + answer-involving triples) and TextPos (answer passages +
/// remaining triples); TriplePos is skipped with a note when the entity
/// passage is missing.
AssembleResult assemble_positive(const Question& question, std::span<const TriplePath> paths,
                                 const std::map<std::string, Passage>& answer_passages,
                                 const std::optional<Passage>& entity_passage);

/// Deduplicated triples of the accepted paths, in first-appearance order.
std::vector<Triple> path_triples(std::span<const TriplePath> paths);

/// Splits triples by whether head or tail id is a gold answer.
void split_by_answer_involvement(std::span<const Triple> triples, const Question& question,
                                 std::vector<Triple>& involving,
                                 std::vector<Triple>& not_involving);

}  // namespace conflictqa
