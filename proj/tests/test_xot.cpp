#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "conflictqa/llm/cache.hpp"
#include "conflictqa/llm/mock.hpp"
#include "conflictqa/xot.hpp"

#include "test_util.hpp"

using namespace conflictqa;
using testutil::make_passage;
using testutil::make_question;
using testutil::make_triple;

namespace {

EvidenceBundle conflict_bundle() {
  EvidenceBundle bundle;
  bundle.kg_evidence = {make_triple("Australia", "capital", "Canberra"),
                        make_triple("Australia", "capital", "Sydney", Polarity::Conflicting)};
  bundle.text_evidence = {make_passage("wiki:Canberra",
                                       "Canberra is the capital of Australia.",
                                       Polarity::Positive, "Canberra")};
  return bundle;
}

llm::LlmSession session_for(llm::BackendPtr backend, llm::CompletionCache* cache = nullptr) {
  llm::LlmSession session;
  session.backend = std::move(backend);
  session.cache = cache;
  session.retry.sleep_between = false;
  session.model = "mock";
  return session;
}

llm::BackendPtr two_stage_mock(const std::string& stage1, const std::string& stage2) {
  return std::make_shared<llm::FnBackend>("xot-mock",
                                          [stage1, stage2](const llm::CompletionRequest& r) {
                                            return r.tag == "xot_stage1" ? stage1 : stage2;
                                          });
}

}  // namespace

TEST_CASE("enumerate_candidates parses the candidate lines") {
  auto backend = two_stage_mock(
      "CANDIDATE: Canberra | BECAUSE: the planned capital since federation\n"
      "CANDIDATE: Sydney | BECAUSE: named as capital in one record\n",
      "ANSWERS: [\"Canberra\"]");
  auto session = session_for(backend);
  auto q = make_question("q", "What is the capital of Australia?", "Australia", {"Canberra"});
  XoTTrace trace;
  auto pairs = enumerate_candidates(q, conflict_bundle(), session, 5,
                                    Ordering::ConflictFirst, &trace);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].candidate == "Canberra");
  CHECK(pairs[1].explanation == "named as capital in one record");
  CHECK_FALSE(trace.truncated);
}

TEST_CASE("pairs beyond K are truncated with a warning") {
  std::string stage1;
  for (int i = 0; i < 7; ++i) {
    stage1 += "CANDIDATE: option " + std::to_string(i) + " | BECAUSE: reason\n";
  }
  auto session = session_for(two_stage_mock(stage1, "ANSWERS: [\"option 0\"]"));
  auto q = make_question("q", "pick one?", "t", {"option 0"});
  XoTTrace trace;
  auto pairs = enumerate_candidates(q, conflict_bundle(), session, 5,
                                    Ordering::ConflictFirst, &trace);
  CHECK(pairs.size() == 5);
  CHECK(trace.truncated);
}

TEST_CASE("prose with no delimiter is the error path") {
  auto session = session_for(two_stage_mock("I believe the answer is Canberra.", "unused"));
  auto q = make_question("q", "capital?", "t", {"Canberra"});
  auto [answers, trace] = run_xot(q, conflict_bundle(), session, 5);
  CHECK(answers.empty());
  CHECK_FALSE(trace.error.empty());
}

TEST_CASE("source markers in explanations are logged, not fatal") {
  auto session = session_for(two_stage_mock(
      "CANDIDATE: Canberra | BECAUSE: the knowledge graph names it\n",
      "ANSWERS: [\"Canberra\"]"));
  auto q = make_question("q", "capital?", "t", {"Canberra"});
  XoTTrace trace;
  auto pairs = enumerate_candidates(q, conflict_bundle(), session, 5,
                                    Ordering::ConflictFirst, &trace);
  REQUIRE(pairs.size() == 1);
  REQUIRE_FALSE(trace.blocklist_hits.empty());
  CHECK(trace.blocklist_hits[0].find("knowledge graph") != std::string::npos);
}

TEST_CASE("select_final filters to the candidate set") {
  auto q = make_question("q", "capital?", "t", {"Canberra"});
  std::vector<CandidateExplanation> candidates{{"Canberra", "planned capital"},
                                               {"Sydney", "largest city"}};

  SUBCASE("single candidate still runs stage 2") {
    auto session = session_for(two_stage_mock("unused", "ANSWERS: [\"Canberra\"]"));
    XoTTrace trace;
    auto final = select_final(q, {candidates[0]}, session, &trace);
    REQUIRE(final.size() == 1);
    CHECK(final.contains_normalized("canberra"));
  }
  SUBCASE("answers outside the candidates fall back with a warning") {
    auto session = session_for(two_stage_mock("unused", "ANSWERS: [\"Melbourne\"]"));
    XoTTrace trace;
    auto final = select_final(q, candidates, session, &trace);
    CHECK(trace.fallback_unfiltered);
    REQUIRE(final.size() == 1);
    CHECK(final.contains_normalized("melbourne"));
  }
  SUBCASE("empty candidates violate the precondition") {
    auto session = session_for(two_stage_mock("unused", "unused"));
    CHECK_THROWS_AS(select_final(q, {}, session, nullptr), std::invalid_argument);
  }
}

TEST_CASE("run_xot composes the stages with a full trace") {
  auto backend = std::make_shared<llm::FnBackend>(
      "pick-second", [](const llm::CompletionRequest& r) {
        if (r.tag == "xot_stage1") {
          return std::string("CANDIDATE: Canberra | BECAUSE: planned capital\n"
                             "CANDIDATE: Sydney | BECAUSE: one record says so\n");
        }
        return std::string("ANSWERS: [\"Sydney\"]");
      });
  auto session = session_for(backend);
  auto q = make_question("q", "What is the capital of Australia?", "Australia", {"Canberra"});
  auto [answers, trace] = run_xot(q, conflict_bundle(), session, 5);

  REQUIRE(answers.size() == 1);
  CHECK(answers.contains_normalized("sydney"));
  CHECK(trace.candidates.size() == 2);
  CHECK(trace.error.empty());
  CHECK_FALSE(trace.stage1_completion.text.empty());
  CHECK_FALSE(trace.stage2_completion.text.empty());

  // final ⊆ candidates after normalization.
  for (const auto& answer : trace.final.answers()) {
    bool found = false;
    for (const auto& c : trace.candidates) {
      found |= normalize_answer(c.candidate) == normalize_answer(answer);
    }
    CHECK(found);
  }
}

TEST_CASE("stage-2 prompts carry no raw evidence") {
  auto session = session_for(two_stage_mock(
      "CANDIDATE: Canberra | BECAUSE: planned capital\n"
      "CANDIDATE: Sydney | BECAUSE: a record says so\n",
      "ANSWERS: [\"Canberra\"]"));
  auto q = make_question("q", "What is the capital of Australia?", "Australia", {"Canberra"});
  auto bundle = conflict_bundle();
  auto [answers, trace] = run_xot(q, bundle, session, 5);

  for (const auto& t : bundle.kg_evidence) {
    std::string rendered = "(" + t.head.label + ", " + t.relation.label + ", " + t.tail.label +
                           ")";
    CHECK(trace.stage2.user.find(rendered) == std::string::npos);
  }
  for (const auto& p : bundle.text_evidence) {
    CHECK(trace.stage2.user.find(p.text) == std::string::npos);
  }
}

TEST_CASE("positive-only bundle with a truthful mock recovers gold") {
  EvidenceBundle bundle;
  bundle.kg_evidence = {make_triple("Australia", "capital", "Canberra")};
  auto session = session_for(two_stage_mock(
      "CANDIDATE: Canberra | BECAUSE: stated directly\n", "ANSWERS: [\"Canberra\"]"));
  auto q = make_question("q", "capital?", "Australia", {"Canberra"});
  auto [answers, trace] = run_xot(q, bundle, session, 3);
  CHECK(answers.contains_normalized("canberra"));
}

TEST_CASE("warm cache makes reruns free and bit-identical") {
  testutil::TempDir tmp("xot-cache");
  llm::CompletionCache cache(tmp.path);
  auto inner = two_stage_mock(
      "CANDIDATE: Canberra | BECAUSE: planned capital\n", "ANSWERS: [\"Canberra\"]");
  auto counted = std::make_shared<llm::CountingBackend>(inner);
  auto session = session_for(counted, &cache);
  auto q = make_question("q", "capital?", "Australia", {"Canberra"});

  auto [first, trace1] = run_xot(q, conflict_bundle(), session, 5);
  int calls_after_first = counted->calls();
  CHECK(calls_after_first == 2);

  auto [second, trace2] = run_xot(q, conflict_bundle(), session, 5);
  CHECK(counted->calls() == calls_after_first);  // zero new backend calls
  CHECK(first.answers() == second.answers());
  CHECK(trace1.stage2.user == trace2.stage2.user);
}

TEST_CASE("text bias case: direct believer errs where two-stage separation recovers") {
  // A conflict case in the spirit of the qualitative study: the misleading
  // passage leads a believer-style direct reader to the wrong answer, while
  // a two-stage pipeline that first enumerates both supported candidates and
  // then judges explanations lands on the gold answer.
  EvidenceBundle bundle;
  bundle.kg_evidence = {make_triple("Australia", "capital", "Canberra")};
  bundle.text_evidence = {make_passage("neg:sydney",
                                       "Sydney is described as the capital of Australia.",
                                       Polarity::Conflicting, "Sydney")};
  auto q = make_question("q", "What is the capital of Australia?", "Australia", {"Canberra"});

  auto believer = llm::first_evidence_believer({"Canberra", "Sydney"});
  auto direct_session = session_for(believer);
  auto plan = build_prompt(q, bundle, Strategy::DirectQA, Ordering::ConflictFirst);
  auto direct_request = direct_session.make_request(plan.user, "qa");
  auto direct = parse_answers(direct_session.run(std::move(direct_request)));
  CHECK(direct.contains_normalized("sydney"));  // misled by the leading passage

  auto staged = std::make_shared<llm::FnBackend>(
      "staged", [](const llm::CompletionRequest& r) {
        if (r.tag == "xot_stage1") {
          return std::string(
              "CANDIDATE: Sydney | BECAUSE: one description names it directly\n"
              "CANDIDATE: Canberra | BECAUSE: the seat of federal government is stated "
              "plainly\n");
        }
        return std::string("ANSWERS: [\"Canberra\"]");
      });
  auto xot_session = session_for(staged);
  auto [answers, trace] = run_xot(q, bundle, xot_session, 5, Ordering::ConflictFirst);
  CHECK(answers.contains_normalized("canberra"));
}
