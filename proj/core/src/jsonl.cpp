#include "conflictqa/jsonl.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "conflictqa/error.hpp"

namespace conflictqa {

namespace {

using json = nlohmann::ordered_json;

json triple_to_json(const Triple& t) {
  return json{{"head", t.head.label},
              {"relation", t.relation.label},
              {"tail", t.tail.label},
              {"polarity", std::string(to_string(t.polarity))}};
}

json passage_to_json(const Passage& p) {
  json j{{"id", p.id},
         {"subject", nullptr},
         {"text", p.text},
         {"polarity", std::string(to_string(p.polarity))}};
  if (p.subject_entity) j["subject"] = p.subject_entity->label;
  return j;
}

std::string require_string(const json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw DataError(ctx + ": missing or non-string field '" + key + "'");
  }
  return j.at(key).get<std::string>();
}

Polarity parse_polarity(const json& j, const std::string& ctx) {
  auto p = polarity_from_string(require_string(j, "polarity", ctx));
  if (!p) throw DataError(ctx + ": unknown polarity");
  return *p;
}

}  // namespace

std::string instance_to_json_line(const BenchmarkInstance& instance) {
  json j;
  j["id"] = instance.id;
  j["question"] = instance.question.text;
  j["topic_entity"] = instance.question.topic_entity.label;
  j["setting"] = std::string(to_string(instance.question.setting));
  j["scenario"] = std::string(to_string(instance.scenario));
  j["gold_answers"] = instance.question.gold_answers.answers();
  if (instance.incorrect_answers) {
    j["incorrect_answers"] = instance.incorrect_answers->answers();
  } else {
    j["incorrect_answers"] = nullptr;
  }
  j["kg_evidence"] = json::array();
  for (const auto& t : instance.bundle.kg_evidence) j["kg_evidence"].push_back(triple_to_json(t));
  j["text_evidence"] = json::array();
  for (const auto& p : instance.bundle.text_evidence) {
    j["text_evidence"].push_back(passage_to_json(p));
  }
  j["provenance"] = json::object();
  for (const auto& [key, value] : instance.provenance) j["provenance"][key] = value;
  return j.dump();
}

BenchmarkInstance instance_from_json_line(const std::string& line, const TokenCounter& tokens) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw DataError(std::string("invalid JSON: ") + e.what());
  }

  BenchmarkInstance instance;
  instance.id = require_string(j, "id", "instance");
  const std::string ctx = "instance " + instance.id;

  instance.question.text = require_string(j, "question", ctx);
  instance.question.topic_entity = Entity(require_string(j, "topic_entity", ctx));

  auto setting = setting_from_string(require_string(j, "setting", ctx));
  if (!setting) throw DataError(ctx + ": unknown setting");
  instance.question.setting = *setting;

  auto scenario = scenario_from_string(require_string(j, "scenario", ctx));
  if (!scenario) throw DataError(ctx + ": unknown scenario");
  instance.scenario = *scenario;

  if (!j.contains("gold_answers") || !j.at("gold_answers").is_array()) {
    throw DataError(ctx + ": missing gold_answers array");
  }
  for (const auto& a : j.at("gold_answers")) {
    instance.question.gold_answers.insert(a.get<std::string>());
  }

  if (j.contains("incorrect_answers") && !j.at("incorrect_answers").is_null()) {
    AnswerSet wrong;
    for (const auto& a : j.at("incorrect_answers")) wrong.insert(a.get<std::string>());
    instance.incorrect_answers = std::move(wrong);
  }

  if (j.contains("kg_evidence")) {
    for (const auto& tj : j.at("kg_evidence")) {
      Triple t;
      t.head = Entity(require_string(tj, "head", ctx));
      t.relation = Relation(require_string(tj, "relation", ctx));
      t.tail = Entity(require_string(tj, "tail", ctx));
      t.polarity = parse_polarity(tj, ctx);
      instance.bundle.kg_evidence.push_back(std::move(t));
    }
  }
  if (j.contains("text_evidence")) {
    for (const auto& pj : j.at("text_evidence")) {
      Passage p;
      p.id = require_string(pj, "id", ctx);
      if (pj.contains("subject") && !pj.at("subject").is_null()) {
        p.subject_entity = Entity(pj.at("subject").get<std::string>());
      }
      p.text = require_string(pj, "text", ctx);
      p.token_count = tokens ? tokens(p.text) : 0;
      p.polarity = parse_polarity(pj, ctx);
      instance.bundle.text_evidence.push_back(std::move(p));
    }
  }

  if (j.contains("provenance") && j.at("provenance").is_object()) {
    for (const auto& [key, value] : j.at("provenance").items()) {
      instance.provenance[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  }
  auto qid = instance.provenance.find("question_id");
  instance.question.id = qid != instance.provenance.end() ? qid->second : instance.id;
  return instance;
}

std::vector<BenchmarkInstance> read_instances(const std::filesystem::path& path,
                                              const TokenCounter& tokens) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open benchmark file: " + path.string());

  std::vector<BenchmarkInstance> instances;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      instances.push_back(instance_from_json_line(line, tokens));
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return instances;
}

void write_instances(const std::filesystem::path& path,
                     std::span<const BenchmarkInstance> instances) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write benchmark file: " + path.string());
    for (const auto& instance : instances) {
      out << instance_to_json_line(instance) << '\n';
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace conflictqa
