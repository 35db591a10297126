#include "conflictqa/build_prompts.hpp"

#include <sstream>

namespace conflictqa::build_prompts {

std::string render_triple(const Triple& triple) {
  return "(" + triple.head.label + ", " + triple.relation.label + ", " + triple.tail.label + ")";
}

std::string render_path(const TriplePath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    if (i > 0) out += " -> ";
    out += render_triple(path.steps[i]);
  }
  return out;
}

std::string humanize_relation(const std::string& label) {
  std::string out = label;
  for (auto& c : out) {
    if (c == '_' || c == '.') c = ' ';
  }
  return out;
}

std::string support_check_prompt(const Passage& passage, const Triple& triple) {
  std::ostringstream out;
  out << "Decide whether the passage fully supports the fact below.\n"
      << "PASSAGE: " << passage.text << "\n"
      << "FACT: " << triple.head.label << " | " << triple.relation.label << " | "
      << triple.tail.label << "\n"
      << "Reply with exactly one word: yes or no.";
  return out.str();
}

std::string rewrite_prompt(const Passage& passage, std::span<const Triple> missing) {
  std::ostringstream out;
  out << "Minimally rewrite the passage so it also states each missing fact, "
         "preserving everything already in it and its factual correctness.\n"
      << "PASSAGE: " << passage.text << "\n";
  for (const auto& t : missing) {
    out << "MISSING: " << t.head.label << " | " << t.relation.label << " | " << t.tail.label
        << "\n";
  }
  out << "Reply with the rewritten passage only, as a single paragraph.";
  return out.str();
}

std::string incorrect_answers_prompt(const Question& question,
                                     std::span<const std::string> avoid) {
  std::ostringstream out;
  out << "For each gold answer to the question, propose one semantically plausible "
         "but incorrect alternative answer of the same kind.\n"
      << "QUESTION: " << question.text << "\n";
  for (const auto& gold : question.gold_answers.answers()) {
    out << "GOLD: " << gold << "\n";
  }
  out << "AVOID: ";
  if (avoid.empty()) {
    out << "(none)";
  } else {
    for (std::size_t i = 0; i < avoid.size(); ++i) {
      if (i > 0) out << "; ";
      out << avoid[i];
    }
  }
  out << "\nReply with one line per gold answer, formatted exactly as\n"
      << "WRONG: <gold answer> => <alternative>";
  return out.str();
}

std::string negative_text_prompt(const Entity& subject, std::span<const Triple> facts) {
  std::ostringstream out;
  out << "Write a short Wikipedia-style paragraph about the subject that plainly "
         "states every fact listed below.\n"
      << "SUBJECT: " << subject.label << "\n";
  for (const auto& t : facts) {
    out << "FACT: " << t.head.label << " | " << t.relation.label << " | " << t.tail.label << "\n";
  }
  out << "Reply with the paragraph only.";
  return out.str();
}

std::string path_judge_prompt(const Question& question, const TriplePath& path) {
  std::ostringstream out;
  out << "Question: " << question.text << "\n"
      << "Candidate fact path: " << render_path(path) << "\n"
      << "Can this path validly support answering the question? "
         "Reply with exactly one word: yes or no.";
  return out.str();
}

}  // namespace conflictqa::build_prompts
