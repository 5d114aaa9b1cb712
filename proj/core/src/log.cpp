#include "genwar/log.h"

#include <iostream>
#include <mutex>
#include <utility>

namespace genwar {
namespace {

std::mutex g_mutex;
std::function<void(const std::string&)> g_sink;

}  // namespace

void log_warning(const std::string& message) {
  std::lock_guard lock(g_mutex);
  if (g_sink) {
    g_sink(message);
  } else {
    std::cerr << "genwar: warning: " << message << "\n";
  }
}

void set_warning_sink(std::function<void(const std::string&)> sink) {
  std::lock_guard lock(g_mutex);
  g_sink = std::move(sink);
}

void reset_warning_sink() {
  std::lock_guard lock(g_mutex);
  g_sink = nullptr;
}

}  // namespace genwar
