#include "conflictqa/eval.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "conflictqa/error.hpp"

namespace conflictqa {

namespace {

std::set<std::string> normalized_set(const AnswerSet& answers) {
  std::set<std::string> out;
  for (const auto& a : answers.answers()) out.insert(normalize_answer(a));
  return out;
}

std::string describe_id_diff(const std::vector<std::string>& a,
                             const std::vector<std::string>& b) {
  std::ostringstream out;
  std::vector<std::string> only_a, only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
  out << "instance coverage differs;";
  if (!only_a.empty()) {
    out << " only in first:";
    for (const auto& id : only_a) out << ' ' << id;
    out << ';';
  }
  if (!only_b.empty()) {
    out << " only in second:";
    for (const auto& id : only_b) out << ' ' << id;
  }
  return out.str();
}

}  // namespace

std::string_view to_string(RunStrategy s) {
  switch (s) {
    case RunStrategy::Qa: return "qa";
    case RunStrategy::CoT: return "cot";
    case RunStrategy::XoT: return "xot";
  }
  return "qa";
}

std::optional<RunStrategy> run_strategy_from_string(std::string_view s) {
  if (s == "qa") return RunStrategy::Qa;
  if (s == "cot") return RunStrategy::CoT;
  if (s == "xot") return RunStrategy::XoT;
  return std::nullopt;
}

double question_f1(const AnswerSet& predicted, const AnswerSet& gold) {
  if (gold.empty()) throw std::invalid_argument("question_f1: gold answer set must be non-empty");
  if (predicted.empty()) return 0.0;

  auto pred_norm = normalized_set(predicted);
  auto gold_norm = normalized_set(gold);
  std::size_t hits = 0;
  for (const auto& p : pred_norm) {
    if (gold_norm.count(p)) ++hits;
  }
  if (hits == 0) return 0.0;

  double precision = static_cast<double>(hits) / static_cast<double>(pred_norm.size());
  double recall = static_cast<double>(hits) / static_cast<double>(gold_norm.size());
  return 2.0 * precision * recall / (precision + recall);
}

int exact_match(const AnswerSet& predicted, const AnswerSet& gold) {
  if (gold.empty())
    throw std::invalid_argument("exact_match: gold answer set must be non-empty");
  return normalized_set(predicted) == normalized_set(gold) ? 1 : 0;
}

double macro_f1(std::span<const double> per_question_f1) {
  if (per_question_f1.empty()) {
    throw std::invalid_argument("macro_f1: no per-question scores");
  }
  double sum = 0.0;
  for (double v : per_question_f1) sum += v;
  return sum / static_cast<double>(per_question_f1.size());
}

long long round_half_up(double value) {
  return static_cast<long long>(std::floor(value + 0.5));
}

DegradationCell degradation(double pos, double conf) {
  if (pos < 0.0 || pos > 100.0 || conf < 0.0 || conf > 100.0) {
    throw std::invalid_argument("degradation: scores must be on the 0-100 scale");
  }
  DegradationCell cell;
  cell.pos = pos;
  cell.conf = conf;
  cell.delta = pos - conf;
  if (pos > 0.0) {
    cell.relative_pct = static_cast<int>(round_half_up(100.0 * cell.delta / pos));
  }
  return cell;
}

ScoreAggregate aggregate_results(std::span<const InstanceResult> results) {
  ScoreAggregate agg;
  if (results.empty()) return agg;

  double f1_sum = 0.0;
  double em_sum = 0.0;
  for (const auto& r : results) {
    agg.instance_ids.push_back(r.instance_id);
    f1_sum += r.f1;
    em_sum += r.em;
  }
  std::sort(agg.instance_ids.begin(), agg.instance_ids.end());
  agg.count = results.size();
  agg.macro_f1 = f1_sum / static_cast<double>(results.size());
  agg.em_rate = em_sum / static_cast<double>(results.size());
  return agg;
}

OrderingGap ordering_gap(const ScoreAggregate& conflict_first,
                         const ScoreAggregate& conflict_last) {
  if (conflict_first.instance_ids != conflict_last.instance_ids) {
    throw DataError("ordering_gap: " +
                    describe_id_diff(conflict_first.instance_ids, conflict_last.instance_ids));
  }
  OrderingGap gap;
  gap.f1 = conflict_last.macro_f1 - conflict_first.macro_f1;
  gap.em = conflict_last.em_rate - conflict_first.em_rate;
  return gap;
}

ScoreAggregate dual_order_average(const ScoreAggregate& a, const ScoreAggregate& b) {
  if (a.instance_ids != b.instance_ids) {
    throw DataError("dual_order_average: " + describe_id_diff(a.instance_ids, b.instance_ids));
  }
  ScoreAggregate avg;
  avg.instance_ids = a.instance_ids;
  avg.count = a.count;
  avg.macro_f1 = (a.macro_f1 + b.macro_f1) / 2.0;
  avg.em_rate = (a.em_rate + b.em_rate) / 2.0;
  return avg;
}

}  // namespace conflictqa
