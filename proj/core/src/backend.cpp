#include "genwar/backend.h"

#include <cctype>
#include <cstdio>

namespace genwar {

const char* tier_name(Tier t) { return t == Tier::strategic ? "strategic" : "tactical"; }

const char* role_name(Role r) {
  switch (r) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
  }
  return "?";
}

const std::string& CompletionRequest::last_user_text() const {
  static const std::string empty;
  for (auto it = messages.rbegin(); it != messages.rend(); ++it) {
    if (it->role == Role::user) return it->text;
  }
  return empty;
}

bool CompletionRequest::valid() const {
  if (temperature < 0.0) return false;
  for (const Message& m : messages) {
    if (m.role == Role::user) return true;
  }
  return false;
}

std::string canonical_request(const CompletionRequest& req) {
  std::string out = tier_name(req.tier);
  char temp[32];
  std::snprintf(temp, sizeof(temp), "|t=%.6g", req.temperature);
  out += temp;
  for (const Message& m : req.messages) {
    out += '|';
    out += role_name(m.role);
    out += ':';
    bool pending_space = false;
    bool begun = false;
    for (char c : m.text) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        pending_space = begun;
      } else {
        if (pending_space) out += ' ';
        pending_space = false;
        begun = true;
        out += c;
      }
    }
  }
  return out;
}

std::string request_digest(const CompletionRequest& req) {
  const std::string canon = canonical_request(req);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x00000100000001b3ull;
  }
  // Second pass with a different basis to widen the key to 128 bits.
  std::uint64_t g = 0x84222325cbf29ce4ull;
  for (unsigned char c : canon) {
    g = (g ^ c) * 0x100000001b3ull + (h & 0xff);
  }
  char buf[36];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx", static_cast<unsigned long long>(h),
                static_cast<unsigned long long>(g));
  return buf;
}

}  // namespace genwar
