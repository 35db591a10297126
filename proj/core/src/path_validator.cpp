#include "conflictqa/path_validator.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "conflictqa/build_prompts.hpp"
#include "conflictqa/error.hpp"

namespace conflictqa {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Minimal CSV: fields with commas/quotes are double-quoted.
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

}  // namespace

ScriptedPathValidator::ScriptedPathValidator(std::vector<ScriptedRejectRule> rules,
                                             std::string id)
    : id_(std::move(id)), rules_(std::move(rules)) {}

PathVerdict ScriptedPathValidator::judge(const Question& question, const TriplePath& path,
                                         std::size_t) {
  for (const auto& rule : rules_) {
    if (!rule.question_id.empty() && rule.question_id != question.id) continue;
    bool hit = false;
    for (const auto& step : path.steps) {
      if (step.relation.label.find(rule.relation_substring) != std::string::npos) {
        hit = true;
        break;
      }
    }
    if (hit) {
      return {id_, false, rule.note.empty() ? "rejected by rule" : rule.note};
    }
  }
  return {id_, true, ""};
}

std::vector<ScriptedRejectRule> load_reject_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open validator rules: " + path.string());

  std::vector<ScriptedRejectRule> rules;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = csv_split(line);
    if (first && !fields.empty() && lower(fields[0]) == "question_id") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() < 2) {
      throw DataError(path.string() + ": rule rows need question_id,relation_substring");
    }
    ScriptedRejectRule rule;
    rule.question_id = fields[0];
    rule.relation_substring = fields[1];
    if (fields.size() > 2) rule.note = fields[2];
    rules.push_back(std::move(rule));
  }
  return rules;
}

LlmPathValidator::LlmPathValidator(llm::LlmSession session, std::string id)
    : session_(std::move(session)), id_(std::move(id)) {}

PathVerdict LlmPathValidator::judge(const Question& question, const TriplePath& path,
                                    std::size_t) {
  auto request = session_.make_request(build_prompts::path_judge_prompt(question, path),
                                       build_prompts::kPathJudgeTag);
  auto completion = session_.run(std::move(request));
  std::string text = lower(completion.text);
  bool accept = text.find("yes") != std::string::npos && text.find("no") == std::string::npos;
  return {id_, accept, completion.text};
}

void export_review_csv(const std::filesystem::path& path,
                       std::span<const ManualReviewRow> rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write review CSV: " + path.string());
  out << "question_id,path_index,rendered_path,verdict,note\n";
  for (const auto& row : rows) {
    out << csv_escape(row.question_id) << ',' << row.path_index << ','
        << csv_escape(row.rendered_path) << ',' << csv_escape(row.verdict) << ','
        << csv_escape(row.note) << '\n';
  }
}

std::vector<ManualReviewRow> import_review_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open review CSV: " + path.string());

  std::vector<ManualReviewRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = csv_split(line);
    if (first && !fields.empty() && lower(fields[0]) == "question_id") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() < 4) {
      throw DataError(path.string() + ": review rows need at least 4 columns");
    }
    ManualReviewRow row;
    row.question_id = fields[0];
    row.path_index = static_cast<std::size_t>(std::stoul(fields[1]));
    row.rendered_path = fields[2];
    row.verdict = lower(fields[3]);
    if (fields.size() > 4) row.note = fields[4];
    rows.push_back(std::move(row));
  }
  return rows;
}

ManualPathValidator::ManualPathValidator(std::vector<ManualReviewRow> rows, std::string id)
    : id_(std::move(id)) {
  for (auto& row : rows) {
    rows_[{row.question_id, row.path_index}] = std::move(row);
  }
}

PathVerdict ManualPathValidator::judge(const Question& question, const TriplePath&,
                                       std::size_t path_index) {
  auto it = rows_.find({question.id, path_index});
  if (it == rows_.end() || it->second.verdict.empty()) {
    return {id_, false, "pending"};
  }
  return {id_, it->second.verdict == "accept", it->second.note};
}

bool ManualPathValidator::has_verdict(const std::string& question_id,
                                      std::size_t path_index) const {
  auto it = rows_.find({question_id, path_index});
  return it != rows_.end() && !it->second.verdict.empty();
}

}  // namespace conflictqa
