#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "conflictqa/prompt_templates.hpp"
#include "conflictqa/prompting.hpp"

#include "test_util.hpp"

using namespace conflictqa;
using testutil::make_passage;
using testutil::make_question;
using testutil::make_triple;

namespace {

EvidenceBundle mixed_bundle() {
  EvidenceBundle bundle;
  bundle.kg_evidence = {make_triple("Australia", "capital", "Canberra"),
                        make_triple("Australia", "capital", "Sydney", Polarity::Conflicting)};
  bundle.text_evidence = {
      make_passage("wiki:Canberra", "Canberra is the capital of Australia.", Polarity::Positive,
                   "Canberra"),
      make_passage("neg:sydney", "Sydney is recorded as the capital.", Polarity::Conflicting,
                   "Sydney")};
  return bundle;
}

std::multiset<std::string> line_multiset(const std::string& text) {
  std::multiset<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    // Passage numbering depends on position; strip it before comparing.
    auto passage = line.find("Passage ");
    if (passage == 0) {
      auto colon = line.find(':');
      line = "Passage" + line.substr(colon);
    }
    lines.insert(line);
  }
  return lines;
}

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

}  // namespace

TEST_CASE("conflicting items lead under ConflictFirst and trail under ConflictLast") {
  auto bundle = mixed_bundle();
  auto first = serialize_evidence(bundle, Ordering::ConflictFirst);
  auto last = serialize_evidence(bundle, Ordering::ConflictLast);

  auto pos_line = first.find("(Australia, capital, Canberra)");
  auto neg_line = first.find("(Australia, capital, Sydney)");
  REQUIRE(pos_line != std::string::npos);
  REQUIRE(neg_line != std::string::npos);
  CHECK(neg_line < pos_line);

  pos_line = last.find("(Australia, capital, Canberra)");
  neg_line = last.find("(Australia, capital, Sydney)");
  CHECK(pos_line < neg_line);
}

TEST_CASE("positive-only bundles render identically under both orderings") {
  auto bundle = mixed_bundle();
  bundle.kg_evidence.pop_back();
  bundle.text_evidence.pop_back();
  CHECK(serialize_evidence(bundle, Ordering::ConflictFirst) ==
        serialize_evidence(bundle, Ordering::ConflictLast));
}

TEST_CASE("orderings are permutations of the same lines") {
  auto bundle = mixed_bundle();
  CHECK(line_multiset(serialize_evidence(bundle, Ordering::ConflictFirst)) ==
        line_multiset(serialize_evidence(bundle, Ordering::ConflictLast)));
}

TEST_CASE("kg precedes text within each polarity group") {
  auto bundle = mixed_bundle();
  auto text = serialize_evidence(bundle, Ordering::ConflictFirst);
  auto neg_triple = text.find("(Australia, capital, Sydney)");
  auto neg_passage = text.find("Sydney is recorded");
  auto pos_triple = text.find("(Australia, capital, Canberra)");
  auto pos_passage = text.find("Canberra is the capital");
  CHECK(neg_triple < neg_passage);
  CHECK(neg_passage < pos_triple);
  CHECK(pos_triple < pos_passage);
}

TEST_CASE("build_prompt embeds the conflict-aware sentence verbatim") {
  auto q = make_question("q1", "What is the capital of Australia?", "Australia", {"Canberra"});
  for (auto strategy : {Strategy::DirectQA, Strategy::CoT}) {
    auto plan = build_prompt(q, mixed_bundle(), strategy, Ordering::ConflictFirst);
    CAPTURE(int(strategy));
    CHECK(plan.system.find(templates::kConflictAwareSentence) != std::string::npos);
  }
}

TEST_CASE("CoT differs from DirectQA only by the reasoning block") {
  auto q = make_question("q1", "What is the capital of Australia?", "Australia", {"Canberra"});
  auto qa = build_prompt(q, mixed_bundle(), Strategy::DirectQA, Ordering::ConflictFirst);
  auto cot = build_prompt(q, mixed_bundle(), Strategy::CoT, Ordering::ConflictFirst);
  CHECK(qa.system == cot.system);
  std::string reasoning_block =
      "Think through the evidence step by step, writing out your reasoning before "
      "you decide.\n\n";
  auto at = cot.user.find(reasoning_block);
  REQUIRE(at != std::string::npos);
  std::string stripped = cot.user;
  stripped.erase(at, reasoning_block.size());
  CHECK(stripped == qa.user);
}

TEST_CASE("the question appears exactly once in the user prompt") {
  auto q = make_question("q1", "What is the capital of Australia?", "Australia", {"Canberra"});
  auto plan = build_prompt(q, mixed_bundle(), Strategy::DirectQA, Ordering::ConflictLast);
  CHECK(count_occurrences(plan.user, q.text) == 1);
}

TEST_CASE("rendered user prompts never name polarities") {
  auto q = make_question("q1", "What is the capital of Australia?", "Australia", {"Canberra"});
  for (auto strategy : {Strategy::DirectQA, Strategy::CoT}) {
    for (auto ordering : {Ordering::ConflictFirst, Ordering::ConflictLast}) {
      auto plan = build_prompt(q, mixed_bundle(), strategy, ordering);
      for (const char* marker : {"positive", "Positive", "conflicting", "Conflicting"}) {
        CAPTURE(marker);
        CHECK(plan.user.find(marker) == std::string::npos);
      }
    }
  }
}

TEST_CASE("parse_answers primary path reads the final ANSWERS line") {
  llm::Completion c;
  c.text = "Some reasoning first.\nANSWERS: [\"Mexico City\"]";
  auto answers = parse_answers(c);
  REQUIRE(answers.size() == 1);
  CHECK(answers.contains_normalized("mexico city"));
}

TEST_CASE("parse_answers dedups after normalization") {
  llm::Completion c;
  c.text = "ANSWERS: [\"A\", \"a\"]";
  auto answers = parse_answers(c);
  CHECK(answers.size() == 1);
  CHECK(answers.answers()[0] == "a");
}

TEST_CASE("parse_answers falls back to the last bracketed list, then the last line") {
  auto bracket = parse_answers_detailed("I think [\"Paris\", \"Lyon\"] covers it.\nCheers");
  CHECK(bracket.path == ParsePath::BracketList);
  CHECK(bracket.answers.size() == 2);

  auto last_line = parse_answers_detailed("No list anywhere.\nParis");
  CHECK(last_line.path == ParsePath::LastLine);
  REQUIRE(last_line.answers.size() == 1);
  CHECK(last_line.answers.contains_normalized("paris"));

  auto empty = parse_answers_detailed("");
  CHECK(empty.path == ParsePath::Empty);
  CHECK(empty.answers.empty());
}

TEST_CASE("parse round-trips a rendered answer list") {
  std::mt19937 rng(3);
  std::vector<std::string> universe{"oslo", "bergen", "narvik harbor", "alta", "bodo"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> subset;
    for (const auto& u : universe) {
      if (rng() % 2) subset.push_back(u);
    }
    if (subset.empty()) subset.push_back(universe[0]);
    std::string rendered = "ANSWERS: [";
    for (std::size_t i = 0; i < subset.size(); ++i) {
      if (i) rendered += ", ";
      rendered += "\"" + subset[i] + "\"";
    }
    rendered += "]";
    llm::Completion c;
    c.text = rendered;
    auto parsed = parse_answers(c);
    CHECK(parsed == AnswerSet::from(subset));
  }
}
