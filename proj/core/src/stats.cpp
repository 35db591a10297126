#include "conflictqa/stats.hpp"

namespace conflictqa {

CorpusStats bundle_stats(std::span<const BenchmarkInstance> instances) {
  struct Accumulator {
    std::int64_t triples = 0;
    std::int64_t tokens = 0;
    std::size_t count = 0;
  };
  std::map<StatsKey, Accumulator> acc;

  for (const auto& instance : instances) {
    auto& a = acc[{instance.question.setting, instance.scenario}];
    a.triples += static_cast<std::int64_t>(instance.bundle.kg_evidence.size());
    a.tokens += instance.bundle.total_passage_tokens();
    a.count += 1;
  }

  CorpusStats stats;
  for (const auto& [key, a] : acc) {
    ScenarioStats s;
    s.count = a.count;
    s.avg_triples = static_cast<double>(a.triples) / static_cast<double>(a.count);
    s.avg_tokens = static_cast<double>(a.tokens) / static_cast<double>(a.count);
    stats.emplace(key, s);
  }
  return stats;
}

}  // namespace conflictqa
