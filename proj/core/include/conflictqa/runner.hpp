#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conflictqa/eval.hpp"
#include "conflictqa/llm/session.hpp"
#include "conflictqa/types.hpp"
#include "conflictqa/xot.hpp"

namespace conflictqa {

enum class OrderingPolicy { Both, ConflictFirst, ConflictLast };

struct RunOptions {
  RunStrategy strategy = RunStrategy::Qa;
  OrderingPolicy ordering = OrderingPolicy::Both;
  int k = 5;  // XoT candidate cap
  int concurrency = 8;
  std::string run_id = "run";
  std::string model_label;  // defaults to the backend id
  /// When set, one JSONL trace per (instance, ordering) lands under
  /// traces_dir/<run_id>.jsonl.
  std::optional<std::filesystem::path> traces_dir;
};

/// Evaluates every instance under the configured strategy, once per requested
/// ordering. Results come back in instance order (orderings interleaved
/// first/last per instance) and carry per-instance F1/EM against the gold
/// answers. Backend failures abort the run; a rerun against the warm cache
/// resumes without re-billing completed calls.
std::vector<InstanceResult> run_evaluation(std::span<const BenchmarkInstance> instances,
                                           const llm::LlmSession& session,
                                           const RunOptions& options);

}  // namespace conflictqa
