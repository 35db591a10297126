#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>

#include "conflictqa/types.hpp"

namespace conflictqa {

struct ScenarioStats {
  double avg_triples = 0.0;
  double avg_tokens = 0.0;
  std::size_t count = 0;
};

using StatsKey = std::pair<Setting, Scenario>;
using CorpusStats = std::map<StatsKey, ScenarioStats>;

/// Per-(setting, scenario) means: |kg_evidence| and summed passage token
/// counts per instance. Sums accumulate in integers and divide once, so the
/// result is permutation-invariant and bit-reproducible. Empty input yields
/// an empty report.
CorpusStats bundle_stats(std::span<const BenchmarkInstance> instances);

}  // namespace conflictqa
