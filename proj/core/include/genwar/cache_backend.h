#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "genwar/backend.h"

namespace genwar {

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t loaded = 0;  // entries read from the cache file at open
};

// Persistent reply cache keyed by the request digest. Entries append to a
// JSON-lines file so an interrupted or repeated run resumes from what has
// already been answered; a fully primed cache never touches the upstream.
class CachingBackend : public Backend {
 public:
  // `path` may be empty for an in-memory-only cache. `upstream` may be null,
  // in which case any miss is an error.
  CachingBackend(std::string path, std::shared_ptr<Backend> upstream);

  std::string complete(const CompletionRequest& req) override;

  CacheStats stats() const;
  std::size_t size() const;

 private:
  void load();
  void append(const std::string& key, Tier tier, const std::string& reply);

  std::string path_;
  std::shared_ptr<Backend> upstream_;
  mutable std::mutex mutex_;
  std::map<std::string, std::string> entries_;
  CacheStats stats_;
};

}  // namespace genwar
