#include "conflictqa/seeds.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "conflictqa/error.hpp"

namespace conflictqa {

namespace {

using json = nlohmann::json;

Entity entity_from(const json& j) {
  if (j.is_string()) return Entity(j.get<std::string>());
  if (j.is_object()) {
    std::string id = j.value("id", std::string());
    std::string label = j.value("label", id);
    if (id.empty()) id = label;
    return Entity(id, label);
  }
  return Entity();
}

void add_gold(Question& q, const Entity& answer) {
  if (answer.empty()) return;
  // Keep gold_answers and gold_entities aligned: drop entities whose label
  // collides after normalization.
  if (q.gold_answers.insert(answer.label)) q.gold_entities.push_back(answer);
}

bool finalize(Question& q, SeedLoadReport* report, const std::string& reason_prefix) {
  if (q.topic_entity.empty()) {
    if (report) report->skipped.push_back(reason_prefix + ": missing topic entity");
    return false;
  }
  if (q.gold_answers.empty()) {
    if (report) report->skipped.push_back(reason_prefix + ": no gold answers");
    return false;
  }
  if (q.text.empty()) {
    if (report) report->skipped.push_back(reason_prefix + ": empty question text");
    return false;
  }
  return true;
}

std::vector<Question> load_generic(const std::filesystem::path& path, SeedLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open seed file: " + path.string());

  std::vector<Question> questions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }

    Question q;
    q.id = j.value("id", "line" + std::to_string(line_no));
    q.text = j.value("question", std::string());
    if (j.contains("topic_entity")) q.topic_entity = entity_from(j.at("topic_entity"));
    if (j.contains("answers")) {
      for (const auto& a : j.at("answers")) add_gold(q, entity_from(a));
    }
    if (j.contains("setting")) {
      auto s = setting_from_string(j.at("setting").get<std::string>());
      if (!s) throw DataError(path.string() + ":" + std::to_string(line_no) + ": bad setting");
      q.setting = *s;
    } else {
      int hops = j.value("hops", 1);
      q.setting = hops >= 2 ? Setting::Comp : Setting::NonComp;
    }
    if (finalize(q, report, q.id)) questions.push_back(std::move(q));
  }
  if (report) report->loaded = questions.size();
  return questions;
}

std::vector<Question> load_webqsp(const std::filesystem::path& path, SeedLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open seed file: " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (!j.contains("Questions") || !j.at("Questions").is_array()) {
    throw DataError(path.string() + ": expected WebQSP layout with a Questions array");
  }

  std::vector<Question> questions;
  for (const auto& qj : j.at("Questions")) {
    Question q;
    q.id = qj.value("QuestionId", std::string());
    q.text = qj.value("ProcessedQuestion", qj.value("RawQuestion", std::string()));

    if (qj.contains("Parses") && qj.at("Parses").is_array() && !qj.at("Parses").empty()) {
      const auto& parse = qj.at("Parses").at(0);
      std::string mid = parse.value("TopicEntityMid", std::string());
      std::string name = parse.value("TopicEntityName", mid);
      if (!mid.empty() || !name.empty()) {
        q.topic_entity = Entity(mid.empty() ? name : mid, name.empty() ? mid : name);
      }
      std::size_t chain = 1;
      if (parse.contains("InferentialChain") && parse.at("InferentialChain").is_array()) {
        chain = parse.at("InferentialChain").size();
      }
      q.setting = chain >= 2 ? Setting::Comp : Setting::NonComp;
      if (parse.contains("Answers")) {
        for (const auto& aj : parse.at("Answers")) {
          std::string arg = aj.value("AnswerArgument", std::string());
          std::string name_a = aj.value("EntityName", std::string());
          if (name_a.empty()) name_a = arg;
          if (arg.empty()) arg = name_a;
          add_gold(q, Entity(arg, name_a));
        }
      }
    }
    if (finalize(q, report, q.id.empty() ? "webqsp entry" : q.id)) {
      questions.push_back(std::move(q));
    }
  }
  if (report) report->loaded = questions.size();
  return questions;
}

std::vector<Question> load_cwq(const std::filesystem::path& path, SeedLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open seed file: " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (!j.is_array()) throw DataError(path.string() + ": expected a CWQ-style JSON array");

  std::vector<Question> questions;
  for (const auto& qj : j) {
    Question q;
    q.id = qj.value("ID", std::string());
    q.text = qj.value("question", std::string());
    q.setting = Setting::Comp;
    if (qj.contains("topic_entity")) {
      q.topic_entity = entity_from(qj.at("topic_entity"));
    } else if (qj.contains("topic_entity_name")) {
      q.topic_entity = Entity(qj.at("topic_entity_name").get<std::string>());
    }
    if (qj.contains("answers")) {
      for (const auto& aj : qj.at("answers")) {
        if (aj.is_string()) {
          add_gold(q, Entity(aj.get<std::string>()));
          continue;
        }
        std::string name = aj.value("answer", std::string());
        std::string id = aj.value("answer_id", name);
        if (name.empty()) name = id;
        add_gold(q, Entity(id, name));
      }
    }
    if (finalize(q, report, q.id.empty() ? "cwq entry" : q.id)) {
      questions.push_back(std::move(q));
    }
  }
  if (report) report->loaded = questions.size();
  return questions;
}

}  // namespace

std::vector<Question> load_seeds(const std::filesystem::path& path, SeedFormat format,
                                 SeedLoadReport* report) {
  switch (format) {
    case SeedFormat::Generic: return load_generic(path, report);
    case SeedFormat::WebQsp: return load_webqsp(path, report);
    case SeedFormat::Cwq: return load_cwq(path, report);
  }
  throw ConfigError("unknown seed format");
}

void write_seed_store(const std::filesystem::path& path, std::span<const Question> questions) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw ConfigError("cannot write seed store: " + path.string());
  for (const auto& q : questions) {
    nlohmann::ordered_json j;
    j["id"] = q.id;
    j["question"] = q.text;
    j["topic_entity"] = nlohmann::ordered_json{{"id", q.topic_entity.id},
                                           {"label", q.topic_entity.label}};
    j["answers"] = nlohmann::ordered_json::array();
    for (const auto& e : q.gold_entities) {
      j["answers"].push_back(nlohmann::ordered_json{{"id", e.id}, {"label", e.label}});
    }
    j["setting"] = std::string(to_string(q.setting));
    out << j.dump() << '\n';
  }
}

std::vector<Question> read_seed_store(const std::filesystem::path& path) {
  return load_seeds(path, SeedFormat::Generic);
}

}  // namespace conflictqa
