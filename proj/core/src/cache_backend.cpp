#include "genwar/cache_backend.h"

#include <chrono>
#include <fstream>

#include <json.hpp>

#include "genwar/log.h"

namespace genwar {

CachingBackend::CachingBackend(std::string path, std::shared_ptr<Backend> upstream)
    : path_(std::move(path)), upstream_(std::move(upstream)) {
  load();
}

void CachingBackend::load() {
  if (path_.empty()) return;
  std::ifstream in(path_);
  if (!in) return;  // first run, file appears on the first store
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      entries_.emplace(j.at("key").get<std::string>(), j.at("reply").get<std::string>());
    } catch (const nlohmann::json::exception&) {
      log_warning("cache file " + path_ + ": skipping malformed line " + std::to_string(lineno));
    }
  }
  stats_.loaded = entries_.size();
}

void CachingBackend::append(const std::string& key, Tier tier, const std::string& reply) {
  if (path_.empty()) return;
  nlohmann::ordered_json j;
  j["key"] = key;
  j["tier"] = tier_name(tier);
  j["reply"] = reply;
  j["created"] = std::chrono::duration_cast<std::chrono::seconds>(
                     std::chrono::system_clock::now().time_since_epoch())
                     .count();
  std::ofstream out(path_, std::ios::app);
  if (!out) {
    log_warning("cache file " + path_ + " is not writable, entry kept in memory only");
    return;
  }
  out << j.dump() << "\n";
}

std::string CachingBackend::complete(const CompletionRequest& req) {
  const std::string key = request_digest(req);
  {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) {
      stats_.hits++;
      return it->second;
    }
  }
  if (!upstream_) {
    throw BackendError("cache miss with no upstream backend (key " + key + ")");
  }
  const std::string reply = upstream_->complete(req);
  std::lock_guard lock(mutex_);
  stats_.misses++;
  auto [it, inserted] = entries_.emplace(key, reply);
  if (inserted) append(key, req.tier, reply);
  return it->second;
}

CacheStats CachingBackend::stats() const {
  std::lock_guard lock(mutex_);
  return stats_;
}

std::size_t CachingBackend::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

}  // namespace genwar
