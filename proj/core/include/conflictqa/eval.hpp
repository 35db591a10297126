#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conflictqa/answer_norm.hpp"
#include "conflictqa/prompting.hpp"
#include "conflictqa/types.hpp"

namespace conflictqa {

/// Per-question F1 over normalized answer sets: P = |pred∩gold|/|pred| (0 for
/// empty predictions), R = |pred∩gold|/|gold|, F1 = 2PR/(P+R) (0 when both
/// vanish). Empty gold sets violate the contract.
double question_f1(const AnswerSet& predicted, const AnswerSet& gold);

/// 1 iff the normalized sets are equal in both directions.
int exact_match(const AnswerSet& predicted, const AnswerSet& gold);

/// Arithmetic mean of per-question scores; empty input is an error.
double macro_f1(std::span<const double> per_question_f1);

/// Whole-run prompting strategy (XoT spans two prompt stages internally).
enum class RunStrategy { Qa, CoT, XoT };
std::string_view to_string(RunStrategy s);
std::optional<RunStrategy> run_strategy_from_string(std::string_view s);

struct InstanceResult {
  std::string instance_id;
  std::string question_id;
  Setting setting = Setting::NonComp;
  Scenario scenario = Scenario::Positive;
  RunStrategy strategy = RunStrategy::Qa;
  Ordering ordering = Ordering::ConflictFirst;
  std::string model;
  AnswerSet predicted;
  double f1 = 0.0;
  int em = 0;
  std::string parse_path;
  std::string trace_ref;
};

/// Pos/Conf/Δ cell on the report's 0-100 scale. relative_pct is absent when
/// pos == 0.
struct DegradationCell {
  double pos = 0.0;
  double conf = 0.0;
  double delta = 0.0;
  std::optional<int> relative_pct;
};

/// delta = pos - conf; relative_pct = round-half-up of 100*delta/pos.
DegradationCell degradation(double pos, double conf);

/// Mean scores over a set of instance results, with the covered instance ids
/// retained so ordering comparisons can insist on identical coverage.
struct ScoreAggregate {
  std::vector<std::string> instance_ids;  // sorted
  double macro_f1 = 0.0;
  double em_rate = 0.0;
  std::size_t count = 0;
};

ScoreAggregate aggregate_results(std::span<const InstanceResult> results);

struct OrderingGap {
  double f1 = 0.0;
  double em = 0.0;
};

/// (conflict-last score) − (conflict-first score), per metric; signed. The
/// two runs must cover the same instances, otherwise the error names the
/// difference.
OrderingGap ordering_gap(const ScoreAggregate& conflict_first,
                         const ScoreAggregate& conflict_last);

/// Per-metric arithmetic mean of two runs over the same instances.
ScoreAggregate dual_order_average(const ScoreAggregate& a, const ScoreAggregate& b);

/// Round-half-up toward +infinity, as in the paper's integer subscripts.
long long round_half_up(double value);

}  // namespace conflictqa
