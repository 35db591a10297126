#include "conflictqa/runner.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "conflictqa/error.hpp"
#include "conflictqa/prompting.hpp"

namespace conflictqa {

namespace {

struct WorkItem {
  std::size_t instance_index;
  Ordering ordering;
};

struct WorkOutput {
  InstanceResult result;
  std::string trace_line;
};

nlohmann::ordered_json plan_json(const PromptPlan& plan) {
  return {{"strategy", std::string(to_string(plan.strategy))},
          {"ordering", std::string(to_string(plan.ordering))},
          {"system", plan.system},
          {"user", plan.user}};
}

WorkOutput evaluate_one(const BenchmarkInstance& instance, Ordering ordering,
                        const llm::LlmSession& session, const RunOptions& options) {
  WorkOutput out;
  InstanceResult& result = out.result;
  result.instance_id = instance.id;
  result.question_id = instance.question.id;
  result.setting = instance.question.setting;
  result.scenario = instance.scenario;
  result.strategy = options.strategy;
  result.ordering = ordering;
  result.model = options.model_label.empty()
                     ? (session.backend ? session.backend->id() : "unknown")
                     : options.model_label;
  result.trace_ref = options.run_id + "/" + instance.id + "@" +
                     std::string(to_string(ordering));

  nlohmann::ordered_json trace;
  trace["instance_id"] = instance.id;
  trace["ordering"] = std::string(to_string(ordering));
  trace["strategy"] = std::string(to_string(options.strategy));

  if (options.strategy == RunStrategy::XoT) {
    auto [answers, xot] = run_xot(instance.question, instance.bundle, session, options.k,
                                  ordering);
    result.predicted = answers;
    result.parse_path = xot.error.empty() ? "xot" : "xot_error";

    trace["stage1"] = plan_json(xot.stage1);
    trace["stage1_completion"] = xot.stage1_completion.text;
    trace["candidates"] = nlohmann::ordered_json::array();
    for (const auto& c : xot.candidates) {
      trace["candidates"].push_back(nlohmann::ordered_json{
          {"candidate", c.candidate}, {"explanation", c.explanation}});
    }
    trace["truncated"] = xot.truncated;
    trace["blocklist_hits"] = xot.blocklist_hits;
    if (xot.error.empty()) {
      trace["stage2"] = plan_json(xot.stage2);
      trace["stage2_completion"] = xot.stage2_completion.text;
      trace["fallback_unfiltered"] = xot.fallback_unfiltered;
    } else {
      trace["error"] = xot.error;
    }
    trace["final"] = answers.answers();
  } else {
    Strategy strategy =
        options.strategy == RunStrategy::CoT ? Strategy::CoT : Strategy::DirectQA;
    auto plan = build_prompt(instance.question, instance.bundle, strategy, ordering);
    auto request = session.make_request(plan.user, "qa");
    request.system = plan.system;
    auto completion = session.run(std::move(request));
    auto parsed = parse_answers_detailed(completion.text);
    result.predicted = parsed.answers;
    result.parse_path = std::string(to_string(parsed.path));

    trace["prompt"] = plan_json(plan);
    trace["completion"] = completion.text;
    trace["parse_path"] = result.parse_path;
    trace["final"] = parsed.answers.answers();
  }

  result.f1 = question_f1(result.predicted, instance.question.gold_answers);
  result.em = exact_match(result.predicted, instance.question.gold_answers);
  out.trace_line = trace.dump();
  return out;
}

}  // namespace

std::vector<InstanceResult> run_evaluation(std::span<const BenchmarkInstance> instances,
                                           const llm::LlmSession& session,
                                           const RunOptions& options) {
  std::vector<WorkItem> items;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (options.ordering != OrderingPolicy::ConflictLast) {
      items.push_back({i, Ordering::ConflictFirst});
    }
    if (options.ordering != OrderingPolicy::ConflictFirst) {
      items.push_back({i, Ordering::ConflictLast});
    }
  }

  std::vector<WorkOutput> outputs(items.size());
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::vector<std::string> failures;

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      const auto& item = items[i];
      try {
        outputs[i] = evaluate_one(instances[item.instance_index], item.ordering, session,
                                  options);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failures.push_back(instances[item.instance_index].id + ": " + e.what());
      }
    }
  };

  int thread_count =
      std::max(1, std::min<int>(options.concurrency, static_cast<int>(items.size())));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(thread_count));
    for (int i = 0; i < thread_count; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  if (!failures.empty()) {
    std::string msg = "evaluation run failed on " + std::to_string(failures.size()) +
                      " instance(s); completed calls are cached, rerun to resume. First: " +
                      failures.front();
    throw BackendError(msg, false);
  }

  if (options.traces_dir) {
    std::filesystem::create_directories(*options.traces_dir);
    auto path = *options.traces_dir / (options.run_id + ".jsonl");
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw ConfigError("cannot write traces: " + path.string());
    for (const auto& o : outputs) out << o.trace_line << '\n';
  }

  std::vector<InstanceResult> results;
  results.reserve(outputs.size());
  for (auto& o : outputs) results.push_back(std::move(o.result));
  return results;
}

}  // namespace conflictqa
