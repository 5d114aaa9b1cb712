#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace genwar {

struct PromptError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Named prompt templates with {placeholder} substitution. The defaults are
// compiled in from the template directory; load_directory() lets a run swap
// in edited copies without rebuilding.
class PromptLibrary {
 public:
  // Library holding the compiled-in templates.
  static PromptLibrary builtin();

  // Overrides (or adds) one template per *.txt file, keyed by file stem.
  void load_directory(const std::string& dir);

  bool has(const std::string& name) const { return templates_.count(name) > 0; }
  const std::string& text(const std::string& name) const;

  // Replaces each {key} from vars in the named template. Placeholders with
  // no matching key are left untouched.
  std::string render(const std::string& name,
                     const std::map<std::string, std::string>& vars) const;

  static std::string substitute(const std::string& text,
                                const std::map<std::string, std::string>& vars);

 private:
  std::map<std::string, std::string> templates_;
};

// The block prepended to strategic prompts when a domain document is supplied:
// empty when doc is empty, otherwise a fixed wrapper around the doc text. Kept
// in one place so runs with and without the document differ by exactly this.
std::string expert_block(const std::string& doc);

}  // namespace genwar
