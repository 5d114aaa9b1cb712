#include "genwar/reflection.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace genwar {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Drops list markers like "1.", "2)", "-" that models like to prepend.
std::string strip_list_marker(std::string line) {
  std::size_t i = 0;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
  if (i > 0 && i < line.size() && (line[i] == '.' || line[i] == ')')) ++i;
  else if (i == 0 && !line.empty() && (line[0] == '-' || line[0] == '*')) i = 1;
  else i = 0;
  return trim(line.substr(i));
}

std::vector<std::string> parse_questions(const std::string& reply, int limit) {
  std::vector<std::string> out;
  std::istringstream in(reply);
  std::string line;
  while (std::getline(in, line) && static_cast<int>(out.size()) < limit) {
    const std::string q = strip_list_marker(trim(line));
    if (!q.empty()) out.push_back(q);
  }
  return out;
}

std::string collapse_whitespace(const std::string& text) {
  std::string out;
  bool in_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out += ' ';
    in_space = false;
    out += c;
  }
  return out;
}

// Statement numbers cited in the reply's last parenthetical, e.g.
// "(because of 1, 3)" -> {1, 3}. Missing or number-free parentheticals cite
// nothing.
std::vector<int> parse_citations(const std::string& reply) {
  std::vector<int> out;
  const std::size_t open = reply.rfind('(');
  if (open == std::string::npos) return out;
  const std::size_t close = reply.find(')', open);
  if (close == std::string::npos) return out;
  std::size_t i = open + 1;
  while (i < close) {
    if (std::isdigit(static_cast<unsigned char>(reply[i]))) {
      std::size_t end = i;
      while (end < close && std::isdigit(static_cast<unsigned char>(reply[end]))) ++end;
      out.push_back(std::stoi(reply.substr(i, end - i)));
      i = end;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace

bool should_reflect(const MemoryStream& stream, const ReflectionConfig& cfg) {
  return stream.accumulated_importance() > cfg.threshold;
}

ReflectionOutcome generate_reflection(MemoryStream& stream, const ReflectionConfig& cfg,
                                      Backend& backend, const PromptLibrary& prompts,
                                      RelevanceScorer& relevance, ImportanceScorer& importance,
                                      int now) {
  ReflectionOutcome outcome;
  if (stream.empty() || cfg.questions <= 0) return outcome;

  std::string recent_lines;
  {
    int n = 1;
    for (const MemoryObject* m : stream.recent(cfg.window))
      recent_lines += std::to_string(n++) + ". " + m->description + "\n";
  }
  const std::string question_prompt =
      prompts.render("reflection_questions", {{"observations", recent_lines},
                                              {"count", std::to_string(cfg.questions)}});
  const std::vector<std::string> questions = parse_questions(
      backend.complete(CompletionRequest::user(Tier::tactical, question_prompt)), cfg.questions);
  if (questions.empty())
    throw BackendError("reflection produced no usable questions");

  // Phase two runs entirely on staged data; nothing below mutates the stream
  // until every backend call has succeeded.
  struct Staged {
    ReflectionRecord record;
    int insight_importance = 1;
  };
  std::vector<Staged> staged;
  std::set<int> accessed;
  for (const std::string& question : questions) {
    const std::vector<ScoredMemory> evidence =
        stream.retrieve(question, now, relevance, /*update_access=*/false);
    std::string statements;
    for (std::size_t i = 0; i < evidence.size(); ++i)
      statements += std::to_string(i + 1) + ". " + stream.memory(evidence[i].id).description +
                    "\n";
    const std::string insight_prompt = prompts.render(
        "reflection_insight", {{"statements", statements}, {"question", question}});
    const std::string insight = collapse_whitespace(
        backend.complete(CompletionRequest::user(Tier::tactical, insight_prompt)));
    if (insight.empty()) throw BackendError("reflection produced an empty insight");

    Staged s;
    s.record.question = question;
    s.record.insight = insight;
    for (int n : parse_citations(insight))
      if (n >= 1 && n <= static_cast<int>(evidence.size()))
        s.record.sources.push_back(evidence[n - 1].id);
    s.insight_importance = importance.importance(insight);
    for (const ScoredMemory& e : evidence) accessed.insert(e.id);
    staged.push_back(std::move(s));
  }

  // Commit: evidence counts as accessed, insights join the stream, and the
  // trigger re-arms from zero.
  stream.touch(std::vector<int>(accessed.begin(), accessed.end()), now);
  for (Staged& s : staged) {
    s.record.memory_id = stream.record(MemoryKind::reflection, now, s.record.insight,
                                       s.insight_importance, s.record.sources);
    outcome.insights.push_back(std::move(s.record));
  }
  stream.reset_accumulator();
  return outcome;
}

}  // namespace genwar
