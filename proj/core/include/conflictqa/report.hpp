#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "conflictqa/eval.hpp"
#include "conflictqa/stats.hpp"

namespace conflictqa {

/// Results files are JSONL, one InstanceResult per line.
void write_results(const std::filesystem::path& path, std::span<const InstanceResult> results);
std::vector<InstanceResult> read_results(const std::filesystem::path& path);
std::string result_to_json_line(const InstanceResult& result);
InstanceResult result_from_json_line(const std::string& line);

/// The conflict scenario's positive baseline: the scenario it was built from.
Scenario positive_counterpart(Setting setting, Scenario conflict);

struct ReportCell {
  std::string model;
  Setting setting = Setting::NonComp;
  Scenario conflict = Scenario::TripleConf;
  std::string metric;  // "F1" | "EM"
  DegradationCell cell;
  bool pos_missing = false;
  bool conf_missing = false;
};

/// Joins positive and conflict scores into Pos/Conf/Δ cells per
/// (model, setting, conflict scenario, metric) on the 0-100 scale. When a run
/// carries both evidence orderings the per-ordering aggregates are dual-order
/// averaged first. A missing counterpart leaves the cell flagged absent.
std::vector<ReportCell> degradation_cells(std::span<const InstanceResult> results);

struct OrderingGapRow {
  std::string model;
  Setting setting = Setting::NonComp;
  Scenario conflict = Scenario::TripleConf;
  double delta_f1 = 0.0;  // points on the 0-100 scale, conflict-last minus conflict-first
  double delta_em = 0.0;
};

/// Table-4 style gaps, computable only for results carrying both orderings.
std::vector<OrderingGapRow> ordering_gap_rows(std::span<const InstanceResult> results);

enum class ReportLayout { PaperTable, Csv, Markdown };

/// Formats one Δ cell as the paper prints it: `34.05_{39%}`.
std::string format_delta_cell(const DegradationCell& cell);

std::string render_report(std::span<const ReportCell> cells, ReportLayout layout);
std::string render_ordering_gaps(std::span<const OrderingGapRow> rows, ReportLayout layout);
std::string render_stats(const CorpusStats& stats, ReportLayout layout);

/// Lossless CSV round trip; header:
/// model,setting,scenario,metric,pos,conf,delta,relative_pct
std::string cells_to_csv(std::span<const ReportCell> cells);
std::vector<ReportCell> cells_from_csv(const std::string& csv);

}  // namespace conflictqa
