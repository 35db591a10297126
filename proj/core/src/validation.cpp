#include "conflictqa/validation.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace conflictqa {

namespace {

// Case-insensitive substring search, ASCII case folding only.
bool contains_ci(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return false;
  auto lower = [](unsigned char c) { return static_cast<char>(std::tolower(c)); };
  auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                        [&](char a, char b) { return lower(a) == lower(b); });
  return it != haystack.end();
}

bool endpoint_in_answers(const Triple& t, const AnswerSet& answers) {
  return answers.contains_normalized(normalize_answer(t.head.label)) ||
         answers.contains_normalized(normalize_answer(t.tail.label));
}

bool passage_mentions_any(const Passage& p, const AnswerSet& answers) {
  if (p.subject_entity &&
      answers.contains_normalized(normalize_answer(p.subject_entity->label))) {
    return true;
  }
  for (const auto& a : answers.answers()) {
    if (contains_ci(p.text, a)) return true;
  }
  return false;
}

}  // namespace

std::string_view to_string(ValidationCode code) {
  switch (code) {
    case ValidationCode::EMPTY_QUESTION_TEXT: return "EMPTY_QUESTION_TEXT";
    case ValidationCode::EMPTY_TOPIC_ENTITY: return "EMPTY_TOPIC_ENTITY";
    case ValidationCode::EMPTY_GOLD_ANSWERS: return "EMPTY_GOLD_ANSWERS";
    case ValidationCode::EMPTY_BUNDLE: return "EMPTY_BUNDLE";
    case ValidationCode::EMPTY_TRIPLE_COMPONENT: return "EMPTY_TRIPLE_COMPONENT";
    case ValidationCode::EMPTY_PASSAGE_TEXT: return "EMPTY_PASSAGE_TEXT";
    case ValidationCode::TOKEN_COUNT_INCONSISTENT: return "TOKEN_COUNT_INCONSISTENT";
    case ValidationCode::MIXED_POLARITY_IN_POSITIVE: return "MIXED_POLARITY_IN_POSITIVE";
    case ValidationCode::COMP_SCENARIO_ON_NONCOMP: return "COMP_SCENARIO_ON_NONCOMP";
    case ValidationCode::TRIPLECONF_WITHOUT_CONFLICTING_TRIPLE:
      return "TRIPLECONF_WITHOUT_CONFLICTING_TRIPLE";
    case ValidationCode::TRIPLECONF_WITH_CONFLICTING_PASSAGE:
      return "TRIPLECONF_WITH_CONFLICTING_PASSAGE";
    case ValidationCode::TEXTCONF_WITHOUT_CONFLICTING_PASSAGE:
      return "TEXTCONF_WITHOUT_CONFLICTING_PASSAGE";
    case ValidationCode::TEXTCONF_WITH_CONFLICTING_TRIPLE:
      return "TEXTCONF_WITH_CONFLICTING_TRIPLE";
    case ValidationCode::MISSING_INCORRECT_ANSWERS: return "MISSING_INCORRECT_ANSWERS";
    case ValidationCode::INCORRECT_ANSWER_IS_GOLD: return "INCORRECT_ANSWER_IS_GOLD";
    case ValidationCode::CONFLICT_NOT_GROUNDED: return "CONFLICT_NOT_GROUNDED";
  }
  return "UNKNOWN";
}

ValidationReport validate_instance(const BenchmarkInstance& instance,
                                   const TokenCounter& tokens) {
  std::set<ValidationCode> codes;
  const auto& q = instance.question;
  const auto& bundle = instance.bundle;

  if (q.text.empty()) codes.insert(ValidationCode::EMPTY_QUESTION_TEXT);
  if (q.topic_entity.empty()) codes.insert(ValidationCode::EMPTY_TOPIC_ENTITY);
  if (q.gold_answers.empty()) codes.insert(ValidationCode::EMPTY_GOLD_ANSWERS);
  if (bundle.item_count() == 0) codes.insert(ValidationCode::EMPTY_BUNDLE);

  for (const auto& t : bundle.kg_evidence) {
    if (!t.components_non_empty()) codes.insert(ValidationCode::EMPTY_TRIPLE_COMPONENT);
  }
  for (const auto& p : bundle.text_evidence) {
    if (p.text.empty()) codes.insert(ValidationCode::EMPTY_PASSAGE_TEXT);
    if (tokens && p.token_count != tokens(p.text)) {
      codes.insert(ValidationCode::TOKEN_COUNT_INCONSISTENT);
    }
  }

  std::size_t conflicting_triples = 0;
  std::size_t conflicting_passages = 0;
  for (const auto& t : bundle.kg_evidence) {
    if (t.polarity == Polarity::Conflicting) ++conflicting_triples;
  }
  for (const auto& p : bundle.text_evidence) {
    if (p.polarity == Polarity::Conflicting) ++conflicting_passages;
  }

  if (is_positive_scenario(instance.scenario) &&
      (conflicting_triples > 0 || conflicting_passages > 0)) {
    codes.insert(ValidationCode::MIXED_POLARITY_IN_POSITIVE);
  }
  if ((instance.scenario == Scenario::TriplePos || instance.scenario == Scenario::TextPos) &&
      q.setting != Setting::Comp) {
    codes.insert(ValidationCode::COMP_SCENARIO_ON_NONCOMP);
  }

  if (instance.scenario == Scenario::TripleConf) {
    if (conflicting_triples == 0) {
      codes.insert(ValidationCode::TRIPLECONF_WITHOUT_CONFLICTING_TRIPLE);
    }
    if (conflicting_passages > 0) {
      codes.insert(ValidationCode::TRIPLECONF_WITH_CONFLICTING_PASSAGE);
    }
  }
  if (instance.scenario == Scenario::TextConf) {
    if (conflicting_passages == 0) {
      codes.insert(ValidationCode::TEXTCONF_WITHOUT_CONFLICTING_PASSAGE);
    }
    if (conflicting_triples > 0) {
      codes.insert(ValidationCode::TEXTCONF_WITH_CONFLICTING_TRIPLE);
    }
  }

  if (!is_positive_scenario(instance.scenario)) {
    if (!instance.incorrect_answers || instance.incorrect_answers->empty()) {
      codes.insert(ValidationCode::MISSING_INCORRECT_ANSWERS);
    } else {
      const auto& wrong = *instance.incorrect_answers;
      for (const auto& w : wrong.answers()) {
        if (q.gold_answers.contains_normalized(normalize_answer(w))) {
          codes.insert(ValidationCode::INCORRECT_ANSWER_IS_GOLD);
        }
      }
      // Each conflicting item must be grounded in a synthesized incorrect
      // answer: a triple through one of its endpoints, a passage through its
      // subject or a literal mention.
      for (const auto& t : bundle.kg_evidence) {
        if (t.polarity == Polarity::Conflicting && !endpoint_in_answers(t, wrong)) {
          codes.insert(ValidationCode::CONFLICT_NOT_GROUNDED);
        }
      }
      for (const auto& p : bundle.text_evidence) {
        if (p.polarity == Polarity::Conflicting && !passage_mentions_any(p, wrong)) {
          codes.insert(ValidationCode::CONFLICT_NOT_GROUNDED);
        }
      }
    }
  }

  return ValidationReport(codes.begin(), codes.end());
}

}  // namespace conflictqa
