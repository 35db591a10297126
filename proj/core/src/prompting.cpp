#include "conflictqa/prompting.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "conflictqa/build_prompts.hpp"
#include "conflictqa/prompt_templates.hpp"

namespace conflictqa {

namespace {

std::string replace_all(std::string text, std::string_view slot, std::string_view value) {
  std::size_t pos = 0;
  while ((pos = text.find(slot, pos)) != std::string::npos) {
    text.replace(pos, slot.size(), value);
    pos += value.size();
  }
  return text;
}

void append_side(std::ostringstream& out, const EvidenceBundle& bundle, Polarity polarity,
                 int& passage_number) {
  for (const auto& t : bundle.kg_evidence) {
    if (t.polarity != polarity) continue;
    out << build_prompts::render_triple(t) << "\n";
  }
  for (const auto& p : bundle.text_evidence) {
    if (p.polarity != polarity) continue;
    out << "Passage " << passage_number++ << ": " << p.text << "\n";
  }
}

std::vector<std::string> parse_bracket_list(std::string_view text) {
  std::vector<std::string> out;
  // Try strict JSON first; fall back to naive comma splitting on quote-less
  // content.
  try {
    auto j = nlohmann::json::parse(text);
    if (j.is_array()) {
      for (const auto& item : j) {
        if (item.is_string()) {
          out.push_back(item.get<std::string>());
        } else {
          out.push_back(item.dump());
        }
      }
      return out;
    }
  } catch (const nlohmann::json::exception&) {
  }

  std::string inner(text.substr(1, text.size() - 2));
  std::istringstream in(inner);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t\"'");
    auto e = item.find_last_not_of(" \t\"'");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

// Last '[' ... matching ']' in the text, if any.
std::optional<std::string> last_bracketed(const std::string& text) {
  auto close = text.rfind(']');
  while (close != std::string::npos) {
    auto open = text.rfind('[', close);
    if (open == std::string::npos) return std::nullopt;
    return text.substr(open, close - open + 1);
  }
  return std::nullopt;
}

std::optional<std::string> last_non_empty_line(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string last;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    last = line.substr(b, e - b + 1);
  }
  if (last.empty()) return std::nullopt;
  return last;
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::DirectQA: return "qa";
    case Strategy::CoT: return "cot";
    case Strategy::XoTStage1: return "xot_stage1";
    case Strategy::XoTStage2: return "xot_stage2";
  }
  return "qa";
}

std::string_view to_string(Ordering o) {
  return o == Ordering::ConflictFirst ? "conflict_first" : "conflict_last";
}

std::string_view to_string(ParsePath p) {
  switch (p) {
    case ParsePath::FinalLine: return "final_line";
    case ParsePath::BracketList: return "bracket_list";
    case ParsePath::LastLine: return "last_line";
    case ParsePath::Empty: return "empty";
  }
  return "empty";
}

std::string serialize_evidence(const EvidenceBundle& bundle, Ordering ordering) {
  std::ostringstream out;
  int passage_number = 1;
  if (ordering == Ordering::ConflictFirst) {
    append_side(out, bundle, Polarity::Conflicting, passage_number);
    append_side(out, bundle, Polarity::Positive, passage_number);
  } else {
    append_side(out, bundle, Polarity::Positive, passage_number);
    append_side(out, bundle, Polarity::Conflicting, passage_number);
  }
  std::string text = out.str();
  if (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

PromptPlan build_prompt(const Question& question, const EvidenceBundle& bundle,
                        Strategy strategy, Ordering ordering) {
  if (strategy != Strategy::DirectQA && strategy != Strategy::CoT) {
    throw std::invalid_argument("build_prompt: strategy must be DirectQA or CoT");
  }

  PromptPlan plan;
  plan.strategy = strategy;
  plan.ordering = ordering;
  plan.system = templates::kQaSystem;

  std::string user = strategy == Strategy::DirectQA ? templates::kQaUser : templates::kCotUser;
  user = replace_all(std::move(user), "{question}", question.text);
  user = replace_all(std::move(user), "{evidence}", serialize_evidence(bundle, ordering));
  user = replace_all(std::move(user), "{format_contract}", templates::kAnswerFormatContract);
  plan.user = std::move(user);
  return plan;
}

ParsedAnswers parse_answers_detailed(const std::string& completion_text) {
  ParsedAnswers parsed;

  auto add_all = [&](const std::vector<std::string>& raw) {
    for (const auto& item : raw) parsed.answers.insert(normalize_answer(item));
  };

  // Primary: the mandated final line, last occurrence wins.
  auto marker = completion_text.rfind("ANSWERS:");
  if (marker != std::string::npos) {
    auto open = completion_text.find('[', marker);
    auto close = open == std::string::npos ? std::string::npos
                                           : completion_text.find(']', open);
    if (open != std::string::npos && close != std::string::npos) {
      add_all(parse_bracket_list(
          std::string_view(completion_text).substr(open, close - open + 1)));
      parsed.path = ParsePath::FinalLine;
      return parsed;
    }
  }

  if (auto bracket = last_bracketed(completion_text)) {
    add_all(parse_bracket_list(*bracket));
    if (!parsed.answers.empty()) {
      parsed.path = ParsePath::BracketList;
      return parsed;
    }
  }

  if (auto line = last_non_empty_line(completion_text)) {
    parsed.answers.insert(normalize_answer(*line));
    if (!parsed.answers.empty()) {
      parsed.path = ParsePath::LastLine;
      return parsed;
    }
  }

  parsed.path = ParsePath::Empty;
  return parsed;
}

AnswerSet parse_answers(const llm::Completion& completion) {
  return parse_answers_detailed(completion.text).answers;
}

}  // namespace conflictqa
