#pragma once

#include "genwar/backend.h"

namespace genwar {

struct RemoteOptions {
  std::string base_url;        // falls back to GENWAR_API_BASE
  std::string api_key;         // falls back to GENWAR_API_KEY
  std::string strategic_model = "gpt-4";
  std::string tactical_model = "gpt-3.5-turbo";
  int attempts = 3;            // total tries for transient failures
  int backoff_initial_ms = 500;
  int timeout_seconds = 60;
};

// OpenAI-compatible chat-completions client: POST {base}/v1/chat/completions
// with {model, messages, temperature, max_tokens}, bearer auth, reply text
// from the first choice. Transient failures (transport, 429, 5xx) retry with
// exponential backoff; everything else surfaces as a RemoteError.
class RemoteBackend : public Backend {
 public:
  explicit RemoteBackend(RemoteOptions opts);

  std::string complete(const CompletionRequest& req) override;

  const RemoteOptions& options() const { return opts_; }

 private:
  RemoteOptions opts_;
};

// Stand-in upstream for profiles that must never reach the network; every
// call throws.
class DeadBackend : public Backend {
 public:
  explicit DeadBackend(std::string reason = "network use is disabled in this profile")
      : reason_(std::move(reason)) {}
  std::string complete(const CompletionRequest&) override { throw BackendError(reason_); }

 private:
  std::string reason_;
};

}  // namespace genwar
