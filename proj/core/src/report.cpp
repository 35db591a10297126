#include "conflictqa/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "conflictqa/error.hpp"

namespace conflictqa {

namespace {

std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct GroupKey {
  std::string model;
  Setting setting;
  Scenario scenario;
  bool operator<(const GroupKey& o) const {
    return std::tie(model, setting, scenario) < std::tie(o.model, o.setting, o.scenario);
  }
};

/// Aggregate per ordering, then dual-order average when both are present.
ScoreAggregate combined_aggregate(const std::vector<InstanceResult>& results) {
  std::vector<InstanceResult> first, last;
  for (const auto& r : results) {
    (r.ordering == Ordering::ConflictFirst ? first : last).push_back(r);
  }
  if (first.empty()) return aggregate_results(last);
  if (last.empty()) return aggregate_results(first);
  return dual_order_average(aggregate_results(first), aggregate_results(last));
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

/// Bold the column best, underline the second best. Values map model -> score.
std::map<std::string, std::string> ranked_marks(const std::map<std::string, double>& values) {
  std::map<std::string, std::string> marks;
  if (values.empty()) return marks;
  double best = -1.0, second = -1.0;
  for (const auto& [model, v] : values) best = std::max(best, v);
  for (const auto& [model, v] : values) {
    if (v < best) second = std::max(second, v);
  }
  for (const auto& [model, v] : values) {
    if (v == best) marks[model] = "bold";
    else if (second >= 0.0 && v == second) marks[model] = "underline";
  }
  return marks;
}

std::string decorate(const std::string& text, const std::string& mark) {
  if (mark == "bold") return "**" + text + "**";
  if (mark == "underline") return "_" + text + "_";
  return text;
}

const std::vector<Scenario> kConflictOrder{Scenario::TripleConf, Scenario::TextConf};
const std::vector<std::string> kMetrics{"F1", "EM"};

}  // namespace

std::string result_to_json_line(const InstanceResult& result) {
  nlohmann::ordered_json j;
  j["instance_id"] = result.instance_id;
  j["question_id"] = result.question_id;
  j["setting"] = std::string(to_string(result.setting));
  j["scenario"] = std::string(to_string(result.scenario));
  j["strategy"] = std::string(to_string(result.strategy));
  j["ordering"] = std::string(to_string(result.ordering));
  j["model"] = result.model;
  j["predicted"] = result.predicted.answers();
  j["f1"] = result.f1;
  j["em"] = result.em;
  j["parse_path"] = result.parse_path;
  j["trace_ref"] = result.trace_ref;
  return j.dump();
}

InstanceResult result_from_json_line(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid result JSON: ") + e.what());
  }
  InstanceResult r;
  r.instance_id = j.at("instance_id").get<std::string>();
  r.question_id = j.value("question_id", std::string());
  auto setting = setting_from_string(j.at("setting").get<std::string>());
  auto scenario = scenario_from_string(j.at("scenario").get<std::string>());
  if (!setting || !scenario) throw DataError("result line with unknown setting/scenario");
  r.setting = *setting;
  r.scenario = *scenario;
  r.strategy = run_strategy_from_string(j.value("strategy", std::string("qa")))
                   .value_or(RunStrategy::Qa);
  r.ordering = j.value("ordering", std::string()) == "conflict_last" ? Ordering::ConflictLast
                                                                     : Ordering::ConflictFirst;
  r.model = j.value("model", std::string());
  if (j.contains("predicted")) {
    for (const auto& a : j.at("predicted")) r.predicted.insert(a.get<std::string>());
  }
  r.f1 = j.at("f1").get<double>();
  r.em = j.at("em").get<int>();
  r.parse_path = j.value("parse_path", std::string());
  r.trace_ref = j.value("trace_ref", std::string());
  return r;
}

void write_results(const std::filesystem::path& path, std::span<const InstanceResult> results) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write results file: " + path.string());
    for (const auto& r : results) out << result_to_json_line(r) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

std::vector<InstanceResult> read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open results file: " + path.string());
  std::vector<InstanceResult> results;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      results.push_back(result_from_json_line(line));
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return results;
}

Scenario positive_counterpart(Setting setting, Scenario conflict) {
  if (setting == Setting::NonComp) return Scenario::Positive;
  // COMP pairs by construction: TripleConf extends TextPos, TextConf extends
  // TriplePos.
  return conflict == Scenario::TripleConf ? Scenario::TextPos : Scenario::TriplePos;
}

std::vector<ReportCell> degradation_cells(std::span<const InstanceResult> results) {
  std::map<GroupKey, std::vector<InstanceResult>> groups;
  std::set<std::string> models;
  std::set<Setting> settings;
  for (const auto& r : results) {
    groups[{r.model, r.setting, r.scenario}].push_back(r);
    models.insert(r.model);
    settings.insert(r.setting);
  }

  std::vector<ReportCell> cells;
  for (const auto& model : models) {
    for (Setting setting : settings) {
      for (Scenario conflict : kConflictOrder) {
        auto conf_it = groups.find({model, setting, conflict});
        auto pos_it = groups.find({model, setting, positive_counterpart(setting, conflict)});
        if (conf_it == groups.end() && pos_it == groups.end()) continue;

        ScoreAggregate pos_agg =
            pos_it != groups.end() ? combined_aggregate(pos_it->second) : ScoreAggregate{};
        ScoreAggregate conf_agg =
            conf_it != groups.end() ? combined_aggregate(conf_it->second) : ScoreAggregate{};

        for (const auto& metric : kMetrics) {
          ReportCell cell;
          cell.model = model;
          cell.setting = setting;
          cell.conflict = conflict;
          cell.metric = metric;
          cell.pos_missing = pos_it == groups.end();
          cell.conf_missing = conf_it == groups.end();
          double pos = metric == "F1" ? pos_agg.macro_f1 : pos_agg.em_rate;
          double conf = metric == "F1" ? conf_agg.macro_f1 : conf_agg.em_rate;
          cell.cell = degradation(pos * 100.0, conf * 100.0);
          cells.push_back(std::move(cell));
        }
      }
    }
  }
  return cells;
}

std::vector<OrderingGapRow> ordering_gap_rows(std::span<const InstanceResult> results) {
  std::map<GroupKey, std::vector<InstanceResult>> groups;
  for (const auto& r : results) {
    if (r.scenario != Scenario::TripleConf && r.scenario != Scenario::TextConf) continue;
    groups[{r.model, r.setting, r.scenario}].push_back(r);
  }

  std::vector<OrderingGapRow> rows;
  for (const auto& [key, group] : groups) {
    std::vector<InstanceResult> first, last;
    for (const auto& r : group) {
      (r.ordering == Ordering::ConflictFirst ? first : last).push_back(r);
    }
    if (first.empty() || last.empty()) continue;
    auto gap = ordering_gap(aggregate_results(first), aggregate_results(last));
    OrderingGapRow row;
    row.model = key.model;
    row.setting = key.setting;
    row.conflict = key.scenario;
    row.delta_f1 = gap.f1 * 100.0;
    row.delta_em = gap.em * 100.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_delta_cell(const DegradationCell& cell) {
  std::string out = fmt2(cell.delta);
  if (cell.relative_pct) {
    out += "_{" + std::to_string(*cell.relative_pct) + "%}";
  } else {
    out += "_{--}";
  }
  return out;
}

std::string cells_to_csv(std::span<const ReportCell> cells) {
  std::ostringstream out;
  out << "model,setting,scenario,metric,pos,conf,delta,relative_pct\n";
  for (const auto& c : cells) {
    out << csv_escape(c.model) << ',' << to_string(c.setting) << ',' << to_string(c.conflict)
        << ',' << c.metric << ',' << fmt2(c.cell.pos) << ',' << fmt2(c.cell.conf) << ','
        << fmt2(c.cell.delta) << ','
        << (c.cell.relative_pct ? std::to_string(*c.cell.relative_pct) : std::string()) << '\n';
  }
  return out.str();
}

std::vector<ReportCell> cells_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<ReportCell> cells;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = csv_split(line);
    if (first && !fields.empty() && fields[0] == "model") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() < 7) throw DataError("aggregates CSV row with too few columns: " + line);
    ReportCell cell;
    cell.model = fields[0];
    auto setting = setting_from_string(fields[1]);
    auto scenario = scenario_from_string(fields[2]);
    if (!setting || !scenario) throw DataError("aggregates CSV row with unknown keys: " + line);
    cell.setting = *setting;
    cell.conflict = *scenario;
    cell.metric = fields[3];
    double pos = std::stod(fields[4]);
    double conf = std::stod(fields[5]);
    cell.cell = degradation(pos, conf);
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::string render_report(std::span<const ReportCell> cells, ReportLayout layout) {
  if (layout == ReportLayout::Csv) {
    return cells_to_csv(cells);
  }

  // Column marks are computed per (setting, conflict, metric, pos|conf)
  // across models.
  std::set<std::string> models;
  std::set<Setting> settings;
  std::map<std::string, const ReportCell*> index;
  auto cell_key = [](const std::string& model, Setting setting, Scenario conflict,
                     const std::string& metric) {
    return model + "|" + std::string(to_string(setting)) + "|" +
           std::string(to_string(conflict)) + "|" + metric;
  };
  for (const auto& c : cells) {
    models.insert(c.model);
    settings.insert(c.setting);
    index[cell_key(c.model, c.setting, c.conflict, c.metric)] = &c;
  }

  std::map<std::string, std::map<std::string, double>> columns;  // column -> model -> value
  for (const auto& c : cells) {
    std::string base = std::string(to_string(c.setting)) + "|" +
                       std::string(to_string(c.conflict)) + "|" + c.metric;
    if (!c.pos_missing) columns[base + "|pos"][c.model] = c.cell.pos;
    if (!c.conf_missing) columns[base + "|conf"][c.model] = c.cell.conf;
  }
  std::map<std::string, std::map<std::string, std::string>> marks;
  for (const auto& [column, values] : columns) marks[column] = ranked_marks(values);

  auto marked = [&](const std::string& column, const std::string& model,
                    const std::string& text) {
    auto cit = marks.find(column);
    if (cit == marks.end()) return text;
    auto mit = cit->second.find(model);
    return mit == cit->second.end() ? text : decorate(text, mit->second);
  };

  std::ostringstream out;
  const bool markdown = layout == ReportLayout::Markdown;
  for (Setting setting : settings) {
    out << (setting == Setting::NonComp ? "## Non-Complementary\n" : "## Complementary\n");
    if (markdown) {
      out << "| Model ";
      for (Scenario conflict : kConflictOrder) {
        for (const auto& metric : kMetrics) {
          out << "| " << to_string(conflict) << " " << metric << " Pos | Conf | Δ ";
        }
      }
      out << "|\n|---";
      for (std::size_t i = 0; i < kConflictOrder.size() * kMetrics.size() * 3; ++i) out << "|---";
      out << "|\n";
    } else {
      out << "Model";
      for (Scenario conflict : kConflictOrder) {
        for (const auto& metric : kMetrics) {
          out << " | " << to_string(conflict) << " " << metric << ": Pos Conf Δ";
        }
      }
      out << "\n";
    }

    for (const auto& model : models) {
      out << (markdown ? "| " : "") << model;
      for (Scenario conflict : kConflictOrder) {
        for (const auto& metric : kMetrics) {
          auto it = index.find(cell_key(model, setting, conflict, metric));
          std::string base = std::string(to_string(setting)) + "|" +
                             std::string(to_string(conflict)) + "|" + metric;
          if (it == index.end()) {
            out << (markdown ? " | -- | -- | --" : " | -- -- --");
            continue;
          }
          const auto& c = *it->second;
          std::string pos_text =
              c.pos_missing ? "absent" : marked(base + "|pos", model, fmt2(c.cell.pos));
          std::string conf_text =
              c.conf_missing ? "absent" : marked(base + "|conf", model, fmt2(c.cell.conf));
          std::string delta_text = (c.pos_missing || c.conf_missing)
                                       ? "absent"
                                       : format_delta_cell(c.cell);
          if (markdown) {
            out << " | " << pos_text << " | " << conf_text << " | " << delta_text;
          } else {
            out << " | " << pos_text << " " << conf_text << " " << delta_text;
          }
        }
      }
      out << (markdown ? " |\n" : "\n");
    }
    out << "\n";
  }
  return out.str();
}

std::string render_ordering_gaps(std::span<const OrderingGapRow> rows, ReportLayout layout) {
  std::ostringstream out;
  if (layout == ReportLayout::Csv) {
    out << "model,setting,scenario,delta_f1,delta_em\n";
    for (const auto& r : rows) {
      out << csv_escape(r.model) << ',' << to_string(r.setting) << ',' << to_string(r.conflict)
          << ',' << fmt2(r.delta_f1) << ',' << fmt2(r.delta_em) << '\n';
    }
    return out.str();
  }
  const bool markdown = layout == ReportLayout::Markdown;
  out << (markdown ? "| Model | Setting | Conflict | ΔF1 | ΔEM |\n|---|---|---|---|---|\n"
                   : "Model | Setting | Conflict | ΔF1 | ΔEM\n");
  for (const auto& r : rows) {
    if (markdown) {
      out << "| " << r.model << " | " << to_string(r.setting) << " | " << to_string(r.conflict)
          << " | " << fmt2(r.delta_f1) << " | " << fmt2(r.delta_em) << " |\n";
    } else {
      out << r.model << " | " << to_string(r.setting) << " | " << to_string(r.conflict) << " | "
          << fmt2(r.delta_f1) << " | " << fmt2(r.delta_em) << "\n";
    }
  }
  return out.str();
}

std::string render_stats(const CorpusStats& stats, ReportLayout layout) {
  // Table-1 display order inside each setting block.
  const std::vector<std::pair<Setting, std::vector<Scenario>>> blocks{
      {Setting::NonComp, {Scenario::Positive, Scenario::TripleConf, Scenario::TextConf}},
      {Setting::Comp,
       {Scenario::TextPos, Scenario::TripleConf, Scenario::TriplePos, Scenario::TextConf}},
  };

  std::ostringstream out;
  if (layout == ReportLayout::Csv) {
    out << "setting,scenario,avg_triples,avg_tokens,count\n";
    for (const auto& [setting, order] : blocks) {
      for (Scenario scenario : order) {
        auto it = stats.find({setting, scenario});
        if (it == stats.end()) continue;
        out << to_string(setting) << ',' << to_string(scenario) << ','
            << fmt2(it->second.avg_triples) << ',' << fmt2(it->second.avg_tokens) << ','
            << it->second.count << '\n';
      }
    }
    return out.str();
  }

  const bool markdown = layout == ReportLayout::Markdown;
  for (const auto& [setting, order] : blocks) {
    bool any = false;
    for (Scenario scenario : order) any = any || stats.count({setting, scenario}) > 0;
    if (!any) continue;
    out << (setting == Setting::NonComp ? "## Non-Complementary\n" : "## Complementary\n");
    out << (markdown ? "| Conflict | #Avg Triples | #Avg Tokens | #Sample |\n|---|---|---|---|\n"
                     : "Conflict | #Avg Triples | #Avg Tokens | #Sample\n");
    for (Scenario scenario : order) {
      auto it = stats.find({setting, scenario});
      if (it == stats.end()) continue;
      if (markdown) {
        out << "| " << to_string(scenario) << " | " << fmt2(it->second.avg_triples) << " | "
            << fmt2(it->second.avg_tokens) << " | " << it->second.count << " |\n";
      } else {
        out << to_string(scenario) << " | " << fmt2(it->second.avg_triples) << " | "
            << fmt2(it->second.avg_tokens) << " | " << it->second.count << "\n";
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace conflictqa
