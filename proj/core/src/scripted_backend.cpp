#include "genwar/scripted_backend.h"

#include <regex>

namespace genwar {

std::string ScriptedBackend::complete(const CompletionRequest& req) {
  if (!req.valid()) throw BackendError("invalid completion request");
  const std::string& text = req.last_user_text();
  for (const ScriptRule& rule : rules_) {
    if (rule.tier && *rule.tier != req.tier) continue;
    if (rule.pattern) {
      if (!std::regex_search(text, std::regex(*rule.pattern))) continue;
    } else {
      if (!rule.match.empty() && text.find(rule.match) == std::string::npos) continue;
      bool all = true;
      for (const std::string& part : rule.also) {
        if (text.find(part) == std::string::npos) {
          all = false;
          break;
        }
      }
      if (!all) continue;
    }
    return rule.reply;
  }
  throw ScriptMiss("no scripted rule matches " + std::string(tier_name(req.tier)) +
                   " prompt: \"" + text.substr(0, 80) + (text.size() > 80 ? "..." : "") + "\"");
}

}  // namespace genwar
