#include "conflictqa/scripted_build.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

#include "conflictqa/answer_norm.hpp"
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

std::vector<std::string> marker_lines(const std::string& text, std::string_view marker) {
  std::vector<std::string> values;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(marker, 0) == 0) values.push_back(line.substr(marker.size()));
  }
  return values;
}

struct Fact {
  std::string head, relation, tail;
};

Fact parse_fact(const std::string& value) {
  Fact f;
  auto first = value.find(" | ");
  auto second = first == std::string::npos ? std::string::npos : value.find(" | ", first + 3);
  if (first == std::string::npos || second == std::string::npos) {
    throw BackendError("scripted-build: malformed fact line: " + value, false);
  }
  f.head = value.substr(0, first);
  f.relation = value.substr(first + 3, second - first - 3);
  f.tail = value.substr(second + 3);
  return f;
}

}  // namespace

ScriptedBuildBackend::ScriptedBuildBackend(std::map<std::string, std::string> substitutions,
                                           std::string id)
    : id_(std::move(id)), substitutions_(std::move(substitutions)) {}

llm::Completion ScriptedBuildBackend::complete_once(const llm::CompletionRequest& request) {
  llm::Completion completion;
  completion.backend_id = id_;

  const std::string& prompt = request.user;
  const std::string& tag = request.tag;

  if (tag == build_prompts::kSupportCheckTag) {
    auto passages = marker_lines(prompt, "PASSAGE: ");
    auto facts = marker_lines(prompt, "FACT: ");
    if (passages.size() != 1 || facts.size() != 1) {
      throw BackendError("scripted-build: malformed support-check prompt", false);
    }
    Fact f = parse_fact(facts[0]);
    bool supported = contains_ci(passages[0], f.head) && contains_ci(passages[0], f.tail);
    completion.text = supported ? "yes" : "no";
  } else if (tag == build_prompts::kRewriteTag) {
    auto passages = marker_lines(prompt, "PASSAGE: ");
    auto missing = marker_lines(prompt, "MISSING: ");
    if (passages.size() != 1 || missing.empty()) {
      throw BackendError("scripted-build: malformed rewrite prompt", false);
    }
    std::string text = passages[0];
    for (const auto& value : missing) {
      Fact f = parse_fact(value);
      text += " Also, " + f.head + " " + build_prompts::humanize_relation(f.relation) + " " +
              f.tail + ".";
    }
    completion.text = text;
  } else if (tag == build_prompts::kIncorrectAnswersTag) {
    auto golds = marker_lines(prompt, "GOLD: ");
    auto avoid_lines = marker_lines(prompt, "AVOID: ");
    if (golds.empty()) {
      throw BackendError("scripted-build: malformed incorrect-answers prompt", false);
    }
    std::vector<std::string> avoid_norm;
    for (const auto& g : golds) avoid_norm.push_back(normalize_answer(g));
    if (!avoid_lines.empty() && avoid_lines[0] != "(none)") {
      std::istringstream in(avoid_lines[0]);
      std::string item;
      while (std::getline(in, item, ';')) {
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        if (!item.empty()) avoid_norm.push_back(normalize_answer(item));
      }
    }
    auto blocked = [&](const std::string& candidate) {
      auto norm = normalize_answer(candidate);
      return std::find(avoid_norm.begin(), avoid_norm.end(), norm) != avoid_norm.end();
    };

    std::ostringstream out;
    for (const auto& gold : golds) {
      std::vector<std::string> chain;
      if (auto it = substitutions_.find(gold); it != substitutions_.end()) {
        chain.push_back(it->second);
      }
      chain.push_back("Not " + gold);
      chain.push_back("Faux " + gold);
      chain.push_back(gold + " II");
      chain.push_back(gold + " III");
      std::string pick;
      for (const auto& candidate : chain) {
        if (!blocked(candidate)) {
          pick = candidate;
          break;
        }
      }
      if (pick.empty()) {
        throw BackendError("scripted-build: exhausted alternatives for '" + gold + "'", false);
      }
      avoid_norm.push_back(normalize_answer(pick));
      out << "WRONG: " << gold << " => " << pick << "\n";
    }
    completion.text = out.str();
  } else if (tag == build_prompts::kNegativeTextTag) {
    auto subjects = marker_lines(prompt, "SUBJECT: ");
    auto facts = marker_lines(prompt, "FACT: ");
    if (subjects.size() != 1 || facts.empty()) {
      throw BackendError("scripted-build: malformed negative-text prompt", false);
    }
    std::ostringstream out;
    out << subjects[0] << " is described in several recently revised reference works.";
    for (const auto& value : facts) {
      Fact f = parse_fact(value);
      out << " According to these records, " << f.head << " "
          << build_prompts::humanize_relation(f.relation) << " " << f.tail << ".";
    }
    completion.text = out.str();
  } else if (tag == build_prompts::kPathJudgeTag) {
    completion.text = "yes";
  } else {
    throw BackendError("scripted-build: unsupported task tag '" + tag + "'", false);
  }

  completion.empty_response = completion.text.empty();
  return completion;
}

}  // namespace conflictqa
