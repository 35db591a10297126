#pragma once

#include <map>
#include <string>

#include "conflictqa/llm/backend.hpp"

namespace conflictqa {

/// Deterministic generator for construction-time tasks. It answers the build
/// prompts (support check, coverage rewrite, incorrect-answer synthesis,
/// negative text, path judgment) with fixed templates and literal-mention
/// heuristics, so fixture builds are byte-stable and never touch a provider.
///
/// The substitution table maps a gold answer label to its preferred incorrect
/// alternative; unmapped answers fall back to a deterministic transform chain.
class ScriptedBuildBackend : public llm::Backend {
 public:
  explicit ScriptedBuildBackend(std::map<std::string, std::string> substitutions = {},
                                std::string id = "scripted-build");

  std::string id() const override { return id_; }
  llm::Completion complete_once(const llm::CompletionRequest& request) override;

 private:
  std::string id_;
  std::map<std::string, std::string> substitutions_;
};

}  // namespace conflictqa
