#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace genwar {

// Strategic requests go to the stronger configured model, tactical requests to
// the cheaper one. Which concrete models those are is configuration.
enum class Tier : std::uint8_t { strategic = 0, tactical };

const char* tier_name(Tier t);

enum class Role : std::uint8_t { system = 0, user, assistant };

const char* role_name(Role r);

struct Message {
  Role role = Role::user;
  std::string text;
};

struct CompletionRequest {
  Tier tier = Tier::tactical;
  std::vector<Message> messages;
  double temperature = 0.0;
  int max_reply_tokens = 512;

  static CompletionRequest user(Tier tier, std::string text) {
    return CompletionRequest{tier, {Message{Role::user, std::move(text)}}, 0.0, 512};
  }
  const std::string& last_user_text() const;
  bool valid() const;
};

struct BackendError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A scripted backend saw a prompt no rule covers. Always a test-coverage gap.
struct ScriptMiss : BackendError {
  using BackendError::BackendError;
};

struct RemoteError : BackendError {
  enum class Kind { transport, timeout, status, malformed };
  RemoteError(Kind kind, const std::string& what) : BackendError(what), kind(kind) {}
  Kind kind;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string complete(const CompletionRequest& req) = 0;
};

// Whitespace-collapsed canonical form of a request, the cache-key input.
std::string canonical_request(const CompletionRequest& req);
std::string request_digest(const CompletionRequest& req);

}  // namespace genwar
