#include "conflictqa/pipeline.hpp"

#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "conflictqa/build_prompts.hpp"
#include "conflictqa/conflict_gen.hpp"
#include "conflictqa/error.hpp"
#include "conflictqa/validation.hpp"

namespace conflictqa {

namespace {

struct QuestionBuild {
  std::vector<BenchmarkInstance> instances;
  std::vector<std::pair<std::string, std::int64_t>> counts;
  std::vector<std::string> notes;
  std::vector<ManualReviewRow> pending_review;
};

QuestionBuild build_one(const Question& question, const TripleStore& store,
                        const TextCorpus& corpus, const llm::LlmSession& generator,
                        std::span<const PathValidatorPtr> validators,
                        const BuildOptions& options, ProvenanceLog* log) {
  QuestionBuild out;

  KgEvidenceOptions kg_options;
  kg_options.max_hops = question.setting == Setting::Comp ? options.max_hops_comp
                                                          : options.max_hops_noncomp;
  kg_options.max_paths = options.max_paths;
  kg_options.undirected = options.undirected;

  auto evidence = collect_kg_evidence(question, store, validators, kg_options);
  if (evidence.no_candidates) {
    out.counts.emplace_back("discarded_no_paths", 1);
    out.notes.push_back(question.id + ": no candidate paths");
    return out;
  }
  if (evidence.discarded) {
    bool pending = false;
    for (std::size_t i = 0; i < evidence.verdicts.size(); ++i) {
      for (const auto& v : evidence.verdicts[i].verdicts) {
        if (v.note == "pending") pending = true;
      }
      ManualReviewRow row;
      row.question_id = question.id;
      row.path_index = i;
      row.rendered_path = build_prompts::render_path(evidence.verdicts[i].path);
      out.pending_review.push_back(std::move(row));
    }
    if (pending) {
      out.counts.emplace_back("pending_review", 1);
      out.notes.push_back(question.id + ": awaiting manual review");
    } else {
      out.pending_review.clear();
      out.counts.emplace_back("discarded_all_paths_rejected", 1);
      out.notes.push_back(question.id + ": every candidate path rejected");
    }
    return out;
  }

  auto triples = path_triples(evidence.paths);

  // Answer passages, coverage-checked against the triples that involve each
  // answer and minimally rewritten when facts are missing.
  std::map<std::string, Passage> answer_passages;
  for (const auto& answer : question.gold_entities) {
    auto passage = extract_summary(corpus, answer, options.tokens);
    if (!passage) {
      out.counts.emplace_back("answers_without_articles", 1);
      out.notes.push_back(question.id + ": no article for answer '" + answer.label + "'");
      continue;
    }
    std::vector<Triple> missing;
    for (const auto& t : triples) {
      if (!t.touches(answer.id)) continue;
      if (!check_support(*passage, t, generator, log, question.id)) missing.push_back(t);
    }
    if (!missing.empty()) {
      *passage = rewrite_for_coverage(*passage, missing, generator, log, question.id);
      out.counts.emplace_back("passages_rewritten", 1);
    }
    answer_passages.emplace(answer.id, std::move(*passage));
  }
  if (answer_passages.empty()) {
    out.counts.emplace_back("discarded_no_answer_articles", 1);
    out.notes.push_back(question.id + ": no answer has an article");
    return out;
  }

  std::optional<Passage> entity_passage;
  if (question.setting == Setting::Comp) {
    entity_passage = extract_summary(corpus, question.topic_entity, options.tokens);
  }

  auto assembled = assemble_positive(question, evidence.paths, answer_passages, entity_passage);
  for (const auto& note : assembled.notes) {
    out.counts.emplace_back("triplepos_skipped_no_entity_passage", 1);
    out.notes.push_back(note);
  }

  // Conflict generation: substitutions, corrupted answer-involving triples,
  // and negative passages grounded in them.
  auto map = synthesize_incorrect_answers(question, generator, log);
  std::vector<Triple> involving;
  std::vector<Triple> remainder;
  split_by_answer_involvement(triples, question, involving, remainder);
  auto negative_triples = corrupt_triples(involving, map);

  std::vector<Passage> negative_passages;
  if (!negative_triples.empty()) {
    negative_passages = generate_negative_text(negative_triples, map, generator, log,
                                               question.id, 2, options.tokens);
  }

  std::vector<BenchmarkInstance> conflicts;
  for (auto& positive : assembled.instances) {
    positive.provenance["seed_dataset"] = options.seed_dataset;
    positive.provenance["generator"] = generator.backend ? generator.backend->id() : "none";

    if (negative_triples.empty()) {
      out.counts.emplace_back("conflicts_skipped_no_negative_triples", 1);
      out.notes.push_back(question.id + ": no answer-involving triples to corrupt");
      continue;
    }
    if (question.setting == Setting::NonComp) {
      conflicts.push_back(instantiate_conflict(positive, map, negative_triples,
                                               negative_passages, Scenario::TripleConf));
      conflicts.push_back(instantiate_conflict(positive, map, negative_triples,
                                               negative_passages, Scenario::TextConf));
    } else if (positive.scenario == Scenario::TextPos) {
      conflicts.push_back(instantiate_conflict(positive, map, negative_triples,
                                               negative_passages, Scenario::TripleConf));
    } else if (positive.scenario == Scenario::TriplePos) {
      conflicts.push_back(instantiate_conflict(positive, map, negative_triples,
                                               negative_passages, Scenario::TextConf));
    }
  }

  out.instances = std::move(assembled.instances);
  for (auto& c : conflicts) out.instances.push_back(std::move(c));

  for (const auto& instance : out.instances) {
    auto report = validate_instance(instance, options.tokens);
    if (!report.empty()) {
      std::ostringstream msg;
      msg << "built instance " << instance.id << " violates invariants:";
      for (auto code : report) msg << ' ' << to_string(code);
      throw DataError(msg.str());
    }
  }
  out.counts.emplace_back("instances_emitted", static_cast<std::int64_t>(out.instances.size()));
  return out;
}

}  // namespace

std::string BuildManifest::to_json() const {
  nlohmann::ordered_json j;
  j["counts"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : counts) j["counts"][key] = value;
  j["notes"] = notes;
  return j.dump(2);
}

std::vector<BenchmarkInstance> build_benchmark(std::span<const Question> seeds,
                                               const TripleStore& store,
                                               const TextCorpus& corpus,
                                               const llm::LlmSession& generator,
                                               std::span<const PathValidatorPtr> validators,
                                               const BuildOptions& options,
                                               BuildManifest& manifest, ProvenanceLog* log) {
  std::vector<QuestionBuild> builds(seeds.size());
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::vector<std::pair<std::string, std::string>> failures;

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= seeds.size()) return;
      try {
        builds[i] = build_one(seeds[i], store, corpus, generator, validators, options, log);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failures.emplace_back(seeds[i].id, e.what());
      }
    }
  };

  int thread_count = std::max(1, std::min<int>(options.concurrency,
                                               static_cast<int>(seeds.size())));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(thread_count));
    for (int i = 0; i < thread_count; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  std::vector<BenchmarkInstance> instances;
  manifest.bump("questions_total", static_cast<std::int64_t>(seeds.size()));
  for (auto& build : builds) {
    for (const auto& [key, value] : build.counts) manifest.bump(key, value);
    for (auto& note : build.notes) manifest.notes.push_back(std::move(note));
    for (auto& row : build.pending_review) manifest.pending_review.push_back(std::move(row));
    for (auto& instance : build.instances) instances.push_back(std::move(instance));
  }
  for (const auto& [qid, what] : failures) {
    manifest.bump("failed_questions", 1);
    manifest.notes.push_back(qid + ": failed: " + what);
  }
  return instances;
}

}  // namespace conflictqa
