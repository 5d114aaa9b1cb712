#include "genwar/prompts.h"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace genwar {

namespace detail {
const std::map<std::string, std::string>& builtin_prompts();
}

PromptLibrary PromptLibrary::builtin() {
  PromptLibrary lib;
  lib.templates_ = detail::builtin_prompts();
  return lib;
}

void PromptLibrary::load_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw PromptError("prompt directory not found: " + dir);
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path());
    if (!in) throw PromptError("cannot read prompt file: " + entry.path().string());
    std::ostringstream text;
    text << in.rdbuf();
    templates_[entry.path().stem().string()] = text.str();
  }
}

const std::string& PromptLibrary::text(const std::string& name) const {
  auto it = templates_.find(name);
  if (it == templates_.end()) throw PromptError("no prompt template named '" + name + "'");
  return it->second;
}

std::string PromptLibrary::render(const std::string& name,
                                  const std::map<std::string, std::string>& vars) const {
  return substitute(text(name), vars);
}

std::string PromptLibrary::substitute(const std::string& text,
                                      const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t open = text.find('{', pos);
    if (open == std::string::npos) {
      out.append(text, pos, std::string::npos);
      break;
    }
    const std::size_t close = text.find('}', open + 1);
    if (close == std::string::npos) {
      out.append(text, pos, std::string::npos);
      break;
    }
    out.append(text, pos, open - pos);
    const std::string key = text.substr(open + 1, close - open - 1);
    auto it = vars.find(key);
    if (it != vars.end()) {
      out += it->second;
      pos = close + 1;
    } else {
      out += '{';  // unknown placeholder: emit literally and keep scanning
      pos = open + 1;
    }
  }
  return out;
}

std::string expert_block(const std::string& doc) {
  if (doc.empty()) return "";
  std::string block = "Domain guidance:\n" + doc;
  if (block.back() != '\n') block += '\n';
  block += '\n';
  return block;
}

}  // namespace genwar
