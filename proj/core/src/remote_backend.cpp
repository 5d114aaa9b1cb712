#include "genwar/remote_backend.h"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "genwar/log.h"
#include "httplib.h"
#include "json.hpp"

namespace genwar {

namespace {

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return (v != nullptr && *v != '\0') ? std::string(v) : fallback;
}

bool transient_status(int status) {
  return status == 429 || (status >= 500 && status < 600);
}

}  // namespace

RemoteBackend::RemoteBackend(RemoteOptions opts) : opts_(std::move(opts)) {
  if (opts_.base_url.empty()) opts_.base_url = env_or("GENWAR_API_BASE", "https://api.openai.com");
  if (opts_.api_key.empty()) opts_.api_key = env_or("GENWAR_API_KEY", "");
  while (!opts_.base_url.empty() && opts_.base_url.back() == '/') opts_.base_url.pop_back();
  if (opts_.attempts < 1) opts_.attempts = 1;
}

std::string RemoteBackend::complete(const CompletionRequest& req) {
  if (!req.valid()) throw BackendError("remote request has no messages");

  nlohmann::json body;
  body["model"] = req.tier == Tier::strategic ? opts_.strategic_model : opts_.tactical_model;
  body["temperature"] = req.temperature;
  body["max_tokens"] = req.max_reply_tokens;
  auto& messages = body["messages"] = nlohmann::json::array();
  for (const Message& m : req.messages)
    messages.push_back({{"role", role_name(m.role)}, {"content", m.text}});
  const std::string payload = body.dump();

  int backoff_ms = opts_.backoff_initial_ms;
  std::string last_failure = "no attempt made";
  RemoteError::Kind last_kind = RemoteError::Kind::transport;

  for (int attempt = 0; attempt < opts_.attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
      backoff_ms *= 2;
    }

    httplib::Client client(opts_.base_url);
    client.set_connection_timeout(opts_.timeout_seconds);
    client.set_read_timeout(opts_.timeout_seconds);
    httplib::Headers headers;
    if (!opts_.api_key.empty()) headers.emplace("Authorization", "Bearer " + opts_.api_key);

    auto res = client.Post("/v1/chat/completions", headers, payload, "application/json");
    if (!res) {
      const auto err = res.error();
      last_kind = err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read
                      ? RemoteError::Kind::timeout
                      : RemoteError::Kind::transport;
      last_failure = "transport failure: " + httplib::to_string(err);
      continue;  // transport problems are always worth a retry
    }
    if (res->status != 200) {
      last_kind = RemoteError::Kind::status;
      last_failure = "http status " + std::to_string(res->status);
      if (transient_status(res->status)) continue;
      throw RemoteError(last_kind, last_failure + ": " + res->body.substr(0, 200));
    }

    nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, /*allow_exceptions=*/false);
    if (reply.is_discarded() || !reply.contains("choices") || !reply["choices"].is_array() ||
        reply["choices"].empty())
      throw RemoteError(RemoteError::Kind::malformed,
                        "response is not a chat completion: " + res->body.substr(0, 200));
    const auto& message = reply["choices"][0]["message"];
    if (!message.contains("content") || !message["content"].is_string())
      throw RemoteError(RemoteError::Kind::malformed, "first choice has no text content");
    return message["content"].get<std::string>();
  }

  throw RemoteError(last_kind, last_failure + " after " + std::to_string(opts_.attempts) +
                                   " attempts");
}

}  // namespace genwar
