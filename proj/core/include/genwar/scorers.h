#pragma once

#include <memory>
#include <string>

#include "genwar/backend.h"
#include "genwar/memory.h"
#include "genwar/prompts.h"

namespace genwar {

// First integer found in a model reply, clamped to the 1..10 rating scale.
// Throws BackendError (quoting the reply) when there is no digit to find.
int parse_scaled_score(const std::string& reply);

// Importance via the importance prompt template on the tactical tier.
class PromptImportanceScorer : public ImportanceScorer {
 public:
  PromptImportanceScorer(std::shared_ptr<Backend> backend, const PromptLibrary& prompts);
  int importance(const std::string& description) override;

 private:
  std::shared_ptr<Backend> backend_;
  const PromptLibrary& prompts_;
};

// Relevance via the relevance prompt template on the tactical tier.
class PromptRelevanceScorer : public RelevanceScorer {
 public:
  PromptRelevanceScorer(std::shared_ptr<Backend> backend, const PromptLibrary& prompts);
  int relevance(const std::string& query, const std::string& description) override;

 private:
  std::shared_ptr<Backend> backend_;
  const PromptLibrary& prompts_;
};

// Constant-score stand-ins for tests and degraded runs.
class FixedImportanceScorer : public ImportanceScorer {
 public:
  explicit FixedImportanceScorer(int value) : value_(value) {}
  int importance(const std::string&) override { return value_; }

 private:
  int value_;
};

class FixedRelevanceScorer : public RelevanceScorer {
 public:
  explicit FixedRelevanceScorer(int value) : value_(value) {}
  int relevance(const std::string&, const std::string&) override { return value_; }

 private:
  int value_;
};

}  // namespace genwar
