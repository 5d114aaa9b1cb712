#pragma once

#include <functional>
#include <string>

namespace genwar {

// Warning sink, replaceable for tests. Default writes "genwar: warning: ..."
// to stderr.
void log_warning(const std::string& message);
void set_warning_sink(std::function<void(const std::string&)> sink);
void reset_warning_sink();

}  // namespace genwar
