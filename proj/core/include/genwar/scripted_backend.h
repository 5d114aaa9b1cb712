#pragma once

#include <optional>

#include "genwar/backend.h"

namespace genwar {

// One reply rule. `match` plus everything in `also` must appear as substrings
// of the last user message (or `pattern` must match it when set). Rules are
// checked in order; the first match wins.
struct ScriptRule {
  std::string match;
  std::vector<std::string> also;
  std::optional<std::string> pattern;  // ECMAScript regex, searched
  std::optional<Tier> tier;
  std::string reply;
};

class ScriptedBackend : public Backend {
 public:
  ScriptedBackend() = default;
  explicit ScriptedBackend(std::vector<ScriptRule> rules) : rules_(std::move(rules)) {}

  void add_rule(ScriptRule rule) { rules_.push_back(std::move(rule)); }
  const std::vector<ScriptRule>& rules() const { return rules_; }

  // First matching rule's reply. Throws ScriptMiss, naming the prompt head,
  // when no rule matches: scripted runs never improvise.
  std::string complete(const CompletionRequest& req) override;

 private:
  std::vector<ScriptRule> rules_;
};

}  // namespace genwar
