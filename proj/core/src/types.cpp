#include "conflictqa/types.hpp"

#include <cctype>

namespace conflictqa {

std::string_view to_string(Setting s) {
  return s == Setting::NonComp ? "non_comp" : "comp";
}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::Positive: return "positive";
    case Scenario::TriplePos: return "triple_pos";
    case Scenario::TextPos: return "text_pos";
    case Scenario::TripleConf: return "triple_conf";
    case Scenario::TextConf: return "text_conf";
  }
  return "positive";
}

std::string_view to_string(Polarity p) {
  return p == Polarity::Positive ? "positive" : "conflicting";
}

std::optional<Setting> setting_from_string(std::string_view s) {
  if (s == "non_comp") return Setting::NonComp;
  if (s == "comp") return Setting::Comp;
  return std::nullopt;
}

std::optional<Scenario> scenario_from_string(std::string_view s) {
  if (s == "positive") return Scenario::Positive;
  if (s == "triple_pos") return Scenario::TriplePos;
  if (s == "text_pos") return Scenario::TextPos;
  if (s == "triple_conf") return Scenario::TripleConf;
  if (s == "text_conf") return Scenario::TextConf;
  return std::nullopt;
}

std::optional<Polarity> polarity_from_string(std::string_view s) {
  if (s == "positive") return Polarity::Positive;
  if (s == "conflicting") return Polarity::Conflicting;
  return std::nullopt;
}

bool is_positive_scenario(Scenario s) {
  return s == Scenario::Positive || s == Scenario::TriplePos || s == Scenario::TextPos;
}

bool TriplePath::chained() const {
  if (steps.empty()) return false;
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    if (!steps[i].tail.same_as(steps[i + 1].head)) return false;
  }
  return true;
}

bool AnswerSet::insert(std::string_view answer) {
  std::string norm = normalize_answer(answer);
  if (norm.empty()) return false;
  for (const auto& existing : answers_) {
    if (normalize_answer(existing) == norm) return false;
  }
  answers_.emplace_back(answer);
  return true;
}

bool AnswerSet::same_normalized(const AnswerSet& other) const {
  if (answers_.size() != other.answers_.size()) return false;
  for (const auto& a : answers_) {
    if (!other.contains_normalized(normalize_answer(a))) return false;
  }
  return true;
}

bool AnswerSet::contains_normalized(std::string_view normalized) const {
  for (const auto& a : answers_) {
    if (normalize_answer(a) == normalized) return true;
  }
  return false;
}

std::vector<std::string> AnswerSet::normalized() const {
  std::vector<std::string> out;
  out.reserve(answers_.size());
  for (const auto& a : answers_) out.push_back(normalize_answer(a));
  return out;
}

std::int64_t EvidenceBundle::total_passage_tokens() const {
  std::int64_t sum = 0;
  for (const auto& p : text_evidence) sum += p.token_count;
  return sum;
}

int whitespace_token_count(std::string_view text) {
  int count = 0;
  bool in_token = false;
  for (unsigned char c : text) {
    bool ws = c < 0x80 && std::isspace(c);
    if (!ws && !in_token) ++count;
    in_token = !ws;
  }
  return count;
}

TokenCounter default_token_counter() {
  return [](std::string_view text) { return whitespace_token_count(text); };
}

}  // namespace conflictqa
