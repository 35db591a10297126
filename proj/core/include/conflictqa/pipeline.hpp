#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "conflictqa/corpus.hpp"
#include "conflictqa/evidence_builder.hpp"
#include "conflictqa/kg_store.hpp"
#include "conflictqa/llm/session.hpp"
#include "conflictqa/path_validator.hpp"
#include "conflictqa/provenance.hpp"
#include "conflictqa/types.hpp"

namespace conflictqa {

struct BuildOptions {
  int max_hops_noncomp = 1;
  int max_hops_comp = 3;
  std::size_t max_paths = 64;
  bool undirected = false;
  int concurrency = 8;
  std::string seed_dataset = "generic";
  TokenCounter tokens = default_token_counter();
};

struct BuildManifest {
  std::map<std::string, std::int64_t> counts;
  std::vector<std::string> notes;
  /// Review rows emitted when the manual validator has no verdict yet.
  std::vector<ManualReviewRow> pending_review;

  void bump(const std::string& key, std::int64_t by = 1) { counts[key] += by; }
  std::string to_json() const;
};

/// Builds the full benchmark from seed questions: path retrieval +
/// validation, answer/entity summaries with coverage rewriting, positive
/// scenario assembly, then conflict instantiation. One question's failure
/// never aborts the corpus; failures and discards land in the manifest.
/// Every emitted instance passes validate_instance; instances appear in seed
/// order, positives before their conflict variants.
std::vector<BenchmarkInstance> build_benchmark(std::span<const Question> seeds,
                                               const TripleStore& store,
                                               const TextCorpus& corpus,
                                               const llm::LlmSession& generator,
                                               std::span<const PathValidatorPtr> validators,
                                               const BuildOptions& options,
                                               BuildManifest& manifest,
                                               ProvenanceLog* log = nullptr);

}  // namespace conflictqa
