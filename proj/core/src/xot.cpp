#include "conflictqa/xot.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "conflictqa/error.hpp"
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

std::string lower_copy(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

const std::vector<std::string>& xot_source_blocklist() {
  static const std::vector<std::string> blocklist{
      "triple", "knowledge graph", "KG", "passage", "text evidence", "document"};
  return blocklist;
}

std::vector<CandidateExplanation> enumerate_candidates(const Question& question,
                                                       const EvidenceBundle& bundle,
                                                       const llm::LlmSession& session, int k,
                                                       Ordering ordering, XoTTrace* trace) {
  if (k < 1) throw std::invalid_argument("enumerate_candidates: K must be >= 1");

  PromptPlan plan;
  plan.strategy = Strategy::XoTStage1;
  plan.ordering = ordering;
  plan.system = templates::kXotStage1System;
  std::string user = templates::kXotStage1User;
  user = replace_all(std::move(user), "{question}", question.text);
  user = replace_all(std::move(user), "{evidence}", serialize_evidence(bundle, ordering));
  user = replace_all(std::move(user), "{k}", std::to_string(k));
  plan.user = std::move(user);

  auto request = session.make_request(plan.user, "xot_stage1");
  request.system = plan.system;
  auto completion = session.run(std::move(request));

  std::vector<CandidateExplanation> pairs;
  bool truncated = false;
  std::istringstream in(completion.text);
  std::string line;
  while (std::getline(in, line)) {
    auto marker = line.find("CANDIDATE:");
    if (marker == std::string::npos) continue;
    auto divider = line.find("| BECAUSE:", marker);
    if (divider == std::string::npos) continue;
    CandidateExplanation pair;
    pair.candidate = trim(line.substr(marker + 10, divider - marker - 10));
    pair.explanation = trim(line.substr(divider + 10));
    if (pair.candidate.empty() || pair.explanation.empty()) continue;
    if (static_cast<int>(pairs.size()) == k) {
      truncated = true;
      break;
    }
    pairs.push_back(std::move(pair));
  }

  std::vector<std::string> hits;
  for (const auto& pair : pairs) {
    std::string explanation = lower_copy(pair.explanation);
    for (const auto& marker : xot_source_blocklist()) {
      if (explanation.find(lower_copy(marker)) != std::string::npos) {
        hits.push_back(pair.candidate + ": " + marker);
      }
    }
  }

  if (trace) {
    trace->stage1 = plan;
    trace->stage1_completion = completion;
    trace->candidates = pairs;
    trace->truncated = truncated;
    trace->blocklist_hits = std::move(hits);
  }
  return pairs;
}

AnswerSet select_final(const Question& question,
                       const std::vector<CandidateExplanation>& candidates,
                       const llm::LlmSession& session, XoTTrace* trace) {
  if (candidates.empty()) {
    throw std::invalid_argument("select_final: candidates must be non-empty");
  }

  std::ostringstream listing;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    listing << (i + 1) << ". " << candidates[i].candidate
            << " -- because: " << candidates[i].explanation << "\n";
  }

  PromptPlan plan;
  plan.strategy = Strategy::XoTStage2;
  plan.system = templates::kXotStage2System;
  std::string user = templates::kXotStage2User;
  user = replace_all(std::move(user), "{question}", question.text);
  user = replace_all(std::move(user), "{candidates}", listing.str());
  user = replace_all(std::move(user), "{format_contract}", templates::kAnswerFormatContract);
  plan.user = std::move(user);

  auto request = session.make_request(plan.user, "xot_stage2");
  request.system = plan.system;
  auto completion = session.run(std::move(request));

  AnswerSet parsed = parse_answers_detailed(completion.text).answers;
  AnswerSet filtered;
  for (const auto& answer : parsed.answers()) {
    auto norm = normalize_answer(answer);
    for (const auto& candidate : candidates) {
      if (normalize_answer(candidate.candidate) == norm) {
        filtered.insert(answer);
        break;
      }
    }
  }

  bool fallback = false;
  if (filtered.empty() && !parsed.empty()) {
    filtered = parsed;
    fallback = true;
  }

  if (trace) {
    trace->stage2 = plan;
    trace->stage2_completion = completion;
    trace->final = filtered;
    trace->fallback_unfiltered = fallback;
  }
  return filtered;
}

std::pair<AnswerSet, XoTTrace> run_xot(const Question& question, const EvidenceBundle& bundle,
                                       const llm::LlmSession& session, int k,
                                       Ordering ordering) {
  XoTTrace trace;
  auto candidates = enumerate_candidates(question, bundle, session, k, ordering, &trace);
  if (candidates.empty()) {
    trace.error = "stage 1 produced no parseable candidate/explanation pairs";
    return {AnswerSet{}, trace};
  }
  auto final = select_final(question, candidates, session, &trace);
  return {final, trace};
}

}  // namespace conflictqa
