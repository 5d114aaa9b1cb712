#include "genwar/scorers.h"

#include <algorithm>
#include <cctype>
#include <utility>

namespace genwar {

int parse_scaled_score(const std::string& reply) {
  for (std::size_t i = 0; i < reply.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(reply[i]))) continue;
    std::size_t end = i;
    while (end < reply.size() && std::isdigit(static_cast<unsigned char>(reply[end]))) ++end;
    // Digit runs longer than the scale can express still clamp cleanly.
    const long value = std::stol(reply.substr(i, std::min<std::size_t>(end - i, 9)));
    return static_cast<int>(std::clamp(value, 1L, 10L));
  }
  throw BackendError("score reply contains no number: \"" + reply.substr(0, 120) + "\"");
}

PromptImportanceScorer::PromptImportanceScorer(std::shared_ptr<Backend> backend,
                                               const PromptLibrary& prompts)
    : backend_(std::move(backend)), prompts_(prompts) {}

int PromptImportanceScorer::importance(const std::string& description) {
  const std::string prompt = prompts_.render("importance", {{"observations", description}});
  return parse_scaled_score(backend_->complete(CompletionRequest::user(Tier::tactical, prompt)));
}

PromptRelevanceScorer::PromptRelevanceScorer(std::shared_ptr<Backend> backend,
                                             const PromptLibrary& prompts)
    : backend_(std::move(backend)), prompts_(prompts) {}

int PromptRelevanceScorer::relevance(const std::string& query, const std::string& description) {
  const std::string prompt =
      prompts_.render("relevance", {{"query", query}, {"memory", description}});
  return parse_scaled_score(backend_->complete(CompletionRequest::user(Tier::tactical, prompt)));
}

}  // namespace genwar
