#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "genwar/backend.h"

namespace genwar {

struct CallRecord {
  Tier tier = Tier::tactical;
  std::vector<Message> messages;
  std::string reply;
  bool failed = false;
  std::string error;
  // Free-form label set by the caller before the call (e.g. "plan red t12"),
  // so transcripts can be read without reconstructing the surrounding loop.
  std::string label;
};

// Pass-through backend that keeps every request/reply pair. Used both for
// episode transcripts and for tests that need to inspect exactly which
// prompts were issued.
class RecordingBackend : public Backend {
 public:
  explicit RecordingBackend(std::shared_ptr<Backend> inner);

  std::string complete(const CompletionRequest& req) override;

  // Label attached to the next calls; sticky until changed.
  void set_label(std::string label);

  std::vector<CallRecord> calls() const;
  void clear();

  // One JSON object per call, newline separated.
  std::string to_jsonl() const;

 private:
  std::shared_ptr<Backend> inner_;
  mutable std::mutex mutex_;
  std::vector<CallRecord> calls_;
  std::string label_;
};

}  // namespace genwar
