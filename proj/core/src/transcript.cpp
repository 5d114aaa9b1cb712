#include "genwar/transcript.h"

#include <utility>

#include "json.hpp"

namespace genwar {

RecordingBackend::RecordingBackend(std::shared_ptr<Backend> inner) : inner_(std::move(inner)) {
  if (!inner_) throw BackendError("recording backend needs an inner backend");
}

std::string RecordingBackend::complete(const CompletionRequest& req) {
  CallRecord record;
  record.tier = req.tier;
  record.messages = req.messages;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    record.label = label_;
  }
  try {
    record.reply = inner_->complete(req);
  } catch (const std::exception& e) {
    record.failed = true;
    record.error = e.what();
    std::lock_guard<std::mutex> lock(mutex_);
    calls_.push_back(std::move(record));
    throw;
  }
  std::string reply = record.reply;
  std::lock_guard<std::mutex> lock(mutex_);
  calls_.push_back(std::move(record));
  return reply;
}

void RecordingBackend::set_label(std::string label) {
  std::lock_guard<std::mutex> lock(mutex_);
  label_ = std::move(label);
}

std::vector<CallRecord> RecordingBackend::calls() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return calls_;
}

void RecordingBackend::clear() {
  std::lock_guard<std::mutex> lock(mutex_);
  calls_.clear();
}

std::string RecordingBackend::to_jsonl() const {
  std::vector<CallRecord> snapshot = calls();
  std::string out;
  for (const CallRecord& call : snapshot) {
    nlohmann::ordered_json entry;
    entry["label"] = call.label;
    entry["tier"] = call.tier == Tier::strategic ? "strategic" : "tactical";
    auto& messages = entry["messages"] = nlohmann::ordered_json::array();
    for (const Message& m : call.messages)
      messages.push_back({{"role", role_name(m.role)}, {"text", m.text}});
    if (call.failed)
      entry["error"] = call.error;
    else
      entry["reply"] = call.reply;
    out += entry.dump();
    out += '\n';
  }
  return out;
}

}  // namespace genwar
