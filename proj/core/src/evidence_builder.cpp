#include "conflictqa/evidence_builder.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

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

std::string triple_key(const Triple& t) {
  return t.head.id + "\x1f" + t.relation.id + "\x1f" + t.tail.id;
}

std::string lower_copy(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

/// The label the rewrite post-check requires: the endpoint that is not the
/// passage's subject.
std::string required_mention(const Triple& t, const Passage& passage) {
  if (passage.subject_entity && t.head.same_as(*passage.subject_entity)) return t.tail.label;
  if (passage.subject_entity && t.tail.same_as(*passage.subject_entity)) return t.head.label;
  return t.tail.label;
}

}  // namespace

KgEvidenceResult collect_kg_evidence(const Question& question, const TripleStore& store,
                                     std::span<const PathValidatorPtr> validators,
                                     const KgEvidenceOptions& options) {
  if (validators.empty()) {
    throw ConfigError("collect_kg_evidence: at least one path validator must be configured");
  }

  std::set<std::string> targets;
  for (const auto& e : question.gold_entities) targets.insert(e.id);
  if (targets.empty()) {
    for (const auto& a : question.gold_answers.answers()) targets.insert(a);
  }

  KgEvidenceResult result;
  PathSearchOptions search;
  search.undirected = options.undirected;
  auto candidates = find_paths(store, question.topic_entity.id, targets, options.max_hops, search);
  if (candidates.size() > options.max_paths) candidates.resize(options.max_paths);

  if (candidates.empty()) {
    result.discarded = true;
    result.no_candidates = true;
    return result;
  }

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    ValidatorVerdict verdict;
    verdict.path = candidates[i];
    for (const auto& validator : validators) {
      verdict.verdicts.push_back(validator->judge(question, candidates[i], i));
    }
    if (verdict.accepted()) result.paths.push_back(candidates[i]);
    result.verdicts.push_back(std::move(verdict));
  }

  result.discarded = result.paths.empty();
  return result;
}

bool check_support(const Passage& passage, const Triple& triple, const llm::LlmSession& session,
                   ProvenanceLog* log, const std::string& question_id) {
  auto request = session.make_request(build_prompts::support_check_prompt(passage, triple),
                                      build_prompts::kSupportCheckTag);
  auto completion = session.run(request);
  if (log) log->record(question_id, "check_support", request, completion);

  std::string text = lower_copy(completion.text);
  bool says_yes = text.find("yes") != std::string::npos;
  bool says_no = text.find("no") != std::string::npos;
  if (says_yes == says_no) {
    throw DataError("check_support: unusable judgment '" + completion.text + "' for passage " +
                    passage.id);
  }
  return says_yes;
}

Passage rewrite_for_coverage(const Passage& passage, std::span<const Triple> missing,
                             const llm::LlmSession& session, ProvenanceLog* log,
                             const std::string& question_id, int max_retries) {
  if (missing.empty()) {
    throw std::invalid_argument("rewrite_for_coverage: missing facts must be non-empty");
  }

  std::string prompt = build_prompts::rewrite_prompt(passage, missing);
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    auto request = session.make_request(prompt, build_prompts::kRewriteTag);
    if (attempt > 0) {
      request.user += "\nAttempt " + std::to_string(attempt + 1) +
                      ": the previous rewrite omitted required names. Include every listed "
                      "fact verbatim.";
    }
    auto completion = session.run(request);
    if (log) log->record(question_id, "rewrite_for_coverage", request, completion);

    bool covered = true;
    for (const auto& t : missing) {
      if (!contains_ci(completion.text, required_mention(t, passage))) {
        covered = false;
        break;
      }
    }
    if (covered) {
      Passage rewritten = passage;
      rewritten.text = completion.text;
      rewritten.token_count = whitespace_token_count(rewritten.text);
      rewritten.polarity = Polarity::Positive;
      if (log) log->note(question_id, "rewrite_original_text", passage.text);
      return rewritten;
    }
  }
  throw DataError("rewrite_for_coverage: post-check failed after retries for passage " +
                  passage.id + " (question " + question_id + ")");
}

std::vector<Triple> path_triples(std::span<const TriplePath> paths) {
  std::vector<Triple> out;
  std::unordered_set<std::string> seen;
  for (const auto& path : paths) {
    for (const auto& t : path.steps) {
      if (seen.insert(triple_key(t)).second) out.push_back(t);
    }
  }
  return out;
}

void split_by_answer_involvement(std::span<const Triple> triples, const Question& question,
                                 std::vector<Triple>& involving,
                                 std::vector<Triple>& not_involving) {
  involving.clear();
  not_involving.clear();
  for (const auto& t : triples) {
    if (question.involves_gold(t.head.id) || question.involves_gold(t.tail.id)) {
      involving.push_back(t);
    } else {
      not_involving.push_back(t);
    }
  }
}

AssembleResult assemble_positive(const Question& question, std::span<const TriplePath> paths,
                                 const std::map<std::string, Passage>& answer_passages,
                                 const std::optional<Passage>& entity_passage) {
  AssembleResult result;
  auto triples = path_triples(paths);

  std::vector<Passage> answer_texts;
  for (const auto& e : question.gold_entities) {
    auto it = answer_passages.find(e.id);
    if (it != answer_passages.end()) answer_texts.push_back(it->second);
  }

  auto base_instance = [&](Scenario scenario) {
    BenchmarkInstance instance;
    instance.id = question.id + "#" + std::string(to_string(scenario));
    instance.question = question;
    instance.scenario = scenario;
    instance.provenance["question_id"] = question.id;
    return instance;
  };

  if (question.setting == Setting::NonComp) {
    auto instance = base_instance(Scenario::Positive);
    instance.bundle.kg_evidence = triples;
    instance.bundle.text_evidence = answer_texts;
    result.instances.push_back(std::move(instance));
    return result;
  }

  std::vector<Triple> involving;
  std::vector<Triple> remainder;
  split_by_answer_involvement(triples, question, involving, remainder);

  if (entity_passage) {
    auto instance = base_instance(Scenario::TriplePos);
    instance.bundle.kg_evidence = involving;
    instance.bundle.text_evidence = {*entity_passage};
    result.instances.push_back(std::move(instance));
  } else {
    result.notes.push_back(question.id + ": TriplePos skipped, no entity passage");
  }

  {
    auto instance = base_instance(Scenario::TextPos);
    instance.bundle.kg_evidence = remainder;
    instance.bundle.text_evidence = answer_texts;
    result.instances.push_back(std::move(instance));
  }
  return result;
}

}  // namespace conflictqa
