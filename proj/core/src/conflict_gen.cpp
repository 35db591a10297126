#include "conflictqa/conflict_gen.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

#include "conflictqa/build_prompts.hpp"
#include "conflictqa/error.hpp"

namespace conflictqa {

namespace {

bool contains_ci(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return false;
  auto lower = [](unsigned char c) { return static_cast<char>(std::tolower(c)); };
  auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                        [&](char a, char b) { return lower(a) == lower(b); });
  return it != haystack.end();
}

std::string slug(std::string_view label) {
  std::string out;
  for (unsigned char c : label) {
    if (std::isalnum(c)) {
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (!out.empty() && out.back() != '-') {
      out.push_back('-');
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out;
}

// Parses "WRONG: <gold> => <alternative>" lines.
std::vector<std::pair<std::string, std::string>> parse_wrong_lines(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto marker = line.find("WRONG:");
    if (marker == std::string::npos) continue;
    auto arrow = line.find("=>", marker);
    if (arrow == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string gold = trim(line.substr(marker + 6, arrow - marker - 6));
    std::string wrong = trim(line.substr(arrow + 2));
    if (!gold.empty() && !wrong.empty()) pairs.emplace_back(gold, wrong);
  }
  return pairs;
}

}  // namespace

const Entity* CorruptionMap::incorrect_for(const std::string& gold_id) const {
  for (const auto& [gold, wrong] : substitutions) {
    if (gold.id == gold_id) return &wrong;
  }
  return nullptr;
}

const Entity* CorruptionMap::gold_for(const std::string& incorrect_id) const {
  for (const auto& [gold, wrong] : substitutions) {
    if (wrong.id == incorrect_id) return &gold;
  }
  return nullptr;
}

AnswerSet CorruptionMap::incorrect_answers() const {
  AnswerSet set;
  for (const auto& [gold, wrong] : substitutions) set.insert(wrong.label);
  return set;
}

CorruptionMap CorruptionMap::inverse() const {
  CorruptionMap inv;
  for (const auto& [gold, wrong] : substitutions) inv.substitutions.emplace_back(wrong, gold);
  return inv;
}

CorruptionMap synthesize_incorrect_answers(const Question& question,
                                           const llm::LlmSession& session, ProvenanceLog* log,
                                           int max_retries) {
  const auto& golds = question.gold_answers.answers();
  if (golds.empty()) {
    throw std::invalid_argument("synthesize_incorrect_answers: question has no gold answers");
  }

  std::vector<std::string> rejected;
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    auto request = session.make_request(
        build_prompts::incorrect_answers_prompt(question, rejected),
        build_prompts::kIncorrectAnswersTag);
    auto completion = session.run(request);
    if (log) log->record(question.id, "synthesize_incorrect_answers", request, completion);

    auto pairs = parse_wrong_lines(completion.text);
    std::map<std::string, std::string> by_gold_norm;
    for (const auto& [gold, wrong] : pairs) by_gold_norm[normalize_answer(gold)] = wrong;

    CorruptionMap map;
    AnswerSet used;
    bool ok = true;
    for (std::size_t i = 0; i < golds.size(); ++i) {
      auto it = by_gold_norm.find(normalize_answer(golds[i]));
      if (it == by_gold_norm.end()) {
        ok = false;
        break;
      }
      const std::string& wrong = it->second;
      bool collides_gold = question.gold_answers.contains_normalized(normalize_answer(wrong));
      bool duplicate = !used.insert(wrong);
      if (collides_gold || duplicate) {
        rejected.push_back(wrong);
        ok = false;
        break;
      }
      Entity gold_entity = i < question.gold_entities.size() ? question.gold_entities[i]
                                                             : Entity(golds[i]);
      map.substitutions.emplace_back(gold_entity, Entity("neg:" + slug(wrong), wrong));
    }
    if (ok && map.substitutions.size() == golds.size()) return map;
  }
  throw DataError("synthesize_incorrect_answers: no valid substitution set after retries for "
                  "question " +
                  question.id);
}

std::vector<Triple> corrupt_triples(std::span<const Triple> triples, const CorruptionMap& map) {
  std::vector<Triple> out;
  for (const auto& t : triples) {
    const Entity* head_sub = map.incorrect_for(t.head.id);
    const Entity* tail_sub = map.incorrect_for(t.tail.id);
    if (!head_sub && !tail_sub) continue;
    Triple corrupted = t;
    if (head_sub) corrupted.head = *head_sub;
    if (tail_sub) corrupted.tail = *tail_sub;
    corrupted.polarity = Polarity::Conflicting;
    out.push_back(std::move(corrupted));
  }
  return out;
}

std::vector<Passage> generate_negative_text(std::span<const Triple> negative_triples,
                                            const CorruptionMap& map,
                                            const llm::LlmSession& session, ProvenanceLog* log,
                                            const std::string& question_id, int max_retries,
                                            const TokenCounter& tokens) {
  if (negative_triples.empty()) {
    throw std::invalid_argument("generate_negative_text: negative triples must be non-empty");
  }
  for (const auto& t : negative_triples) {
    if (t.polarity != Polarity::Conflicting) {
      throw std::invalid_argument("generate_negative_text: all triples must be Conflicting");
    }
  }

  // One passage per substituted incorrect answer, grouping its triples in map
  // order.
  std::vector<Passage> passages;
  for (const auto& [gold, wrong] : map.substitutions) {
    std::vector<Triple> group;
    for (const auto& t : negative_triples) {
      if (t.head.id == wrong.id || t.tail.id == wrong.id) group.push_back(t);
    }
    if (group.empty()) continue;

    std::string prompt = build_prompts::negative_text_prompt(wrong, group);
    bool done = false;
    for (int attempt = 0; attempt <= max_retries && !done; ++attempt) {
      auto request = session.make_request(prompt, build_prompts::kNegativeTextTag);
      if (attempt > 0) {
        request.user += "\nAttempt " + std::to_string(attempt + 1) +
                        ": the previous paragraph omitted required names. State every fact "
                        "with both names verbatim.";
      }
      auto completion = session.run(request);
      if (log) log->record(question_id, "generate_negative_text", request, completion);

      bool covered = true;
      for (const auto& t : group) {
        if (!contains_ci(completion.text, t.head.label) ||
            !contains_ci(completion.text, t.tail.label)) {
          covered = false;
          break;
        }
      }
      if (covered) {
        Passage p;
        p.id = wrong.id;
        p.subject_entity = wrong;
        p.text = completion.text;
        p.token_count = tokens ? tokens(p.text) : 0;
        p.polarity = Polarity::Conflicting;
        passages.push_back(std::move(p));
        done = true;
      }
    }
    if (!done) {
      throw DataError("generate_negative_text: mention post-check failed after retries for '" +
                      wrong.label + "' (question " + question_id + ")");
    }
  }
  return passages;
}

BenchmarkInstance instantiate_conflict(const BenchmarkInstance& positive,
                                       const CorruptionMap& map,
                                       std::span<const Triple> negative_triples,
                                       std::span<const Passage> negative_passages,
                                       Scenario conflict) {
  if (conflict != Scenario::TripleConf && conflict != Scenario::TextConf) {
    throw std::invalid_argument("instantiate_conflict: conflict must be TripleConf or TextConf");
  }
  const Scenario source = positive.scenario;
  const bool comp = positive.question.setting == Setting::Comp;
  const bool compatible =
      (source == Scenario::Positive && !comp) ||
      (source == Scenario::TriplePos && conflict == Scenario::TextConf) ||
      (source == Scenario::TextPos && conflict == Scenario::TripleConf);
  if (!compatible) {
    throw std::invalid_argument(
        "instantiate_conflict: incompatible (scenario, conflict) pair for instance " +
        positive.id);
  }

  BenchmarkInstance instance = positive;
  instance.scenario = conflict;
  instance.id = positive.question.id + "#" + std::string(to_string(conflict));
  instance.incorrect_answers = map.incorrect_answers();
  instance.provenance["source_scenario"] = std::string(to_string(source));

  if (conflict == Scenario::TripleConf) {
    if (comp) {
      // COMP: negative KG triples are added to the positive KG evidence.
      for (const auto& t : negative_triples) instance.bundle.kg_evidence.push_back(t);
    } else {
      // Non-COMP: negative triples replace the KG side; Table 1 keeps the
      // triple count identical between Positive and TripleConf.
      instance.bundle.kg_evidence.assign(negative_triples.begin(), negative_triples.end());
    }
  } else {
    if (comp) {
      for (const auto& p : negative_passages) instance.bundle.text_evidence.push_back(p);
    } else {
      instance.bundle.text_evidence.assign(negative_passages.begin(), negative_passages.end());
    }
  }
  return instance;
}

}  // namespace conflictqa
