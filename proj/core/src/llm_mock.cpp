#include "conflictqa/llm/mock.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "conflictqa/error.hpp"

namespace conflictqa::llm {

namespace {

std::size_t find_ci(std::string_view haystack, std::string_view needle, std::size_t from = 0) {
  if (needle.empty() || from >= haystack.size()) return std::string_view::npos;
  auto lower = [](unsigned char c) { return static_cast<char>(std::tolower(c)); };
  auto it = std::search(haystack.begin() + static_cast<std::ptrdiff_t>(from), haystack.end(),
                        needle.begin(), needle.end(),
                        [&](char a, char b) { return lower(a) == lower(b); });
  if (it == haystack.end()) return std::string_view::npos;
  return static_cast<std::size_t>(it - haystack.begin());
}

}  // namespace

ScriptMock::ScriptMock(std::string id, std::vector<MockRule> rules,
                       std::optional<std::string> default_response)
    : id_(std::move(id)), rules_(std::move(rules)), default_response_(std::move(default_response)) {
  if (rules_.empty() && !default_response_) {
    throw std::invalid_argument("script_mock: rules must be non-empty");
  }
}

Completion ScriptMock::complete_once(const CompletionRequest& request) {
  ++calls_;
  if (fail_first_n_.load() > 0) {
    --fail_first_n_;
    throw BackendError("mock '" + id_ + "': injected transient failure", true);
  }

  auto respond = [&](const std::string& text) {
    Completion c;
    c.text = text;
    c.backend_id = id_;
    c.empty_response = text.empty();
    return c;
  };

  for (const auto& rule : rules_) {
    if (request.user.find(rule.match) != std::string::npos ||
        request.tag.find(rule.match) != std::string::npos) {
      return respond(rule.response);
    }
  }
  if (default_response_) return respond(*default_response_);
  throw BackendError("mock '" + id_ + "': no rule matched prompt (tag=" + request.tag + ")",
                     false);
}

BackendPtr script_mock(std::vector<MockRule> rules, std::optional<std::string> default_response,
                       std::string id) {
  return std::make_shared<ScriptMock>(std::move(id), std::move(rules),
                                      std::move(default_response));
}

BackendPtr first_evidence_believer(std::vector<std::string> candidates, std::string id) {
  auto fn = [candidates = std::move(candidates)](const CompletionRequest& request) {
    std::string_view text = request.user;
    auto evidence_at = find_ci(text, "Evidence:");
    std::string_view section =
        evidence_at == std::string_view::npos ? text : text.substr(evidence_at);

    std::size_t best_pos = std::string_view::npos;
    const std::string* best = nullptr;
    for (const auto& candidate : candidates) {
      auto pos = find_ci(section, candidate);
      if (pos != std::string_view::npos && pos < best_pos) {
        best_pos = pos;
        best = &candidate;
      }
    }
    if (!best) return std::string("ANSWERS: []");
    std::string quoted = *best;
    return "ANSWERS: [\"" + quoted + "\"]";
  };
  return std::make_shared<FnBackend>(std::move(id), std::move(fn));
}

}  // namespace conflictqa::llm
