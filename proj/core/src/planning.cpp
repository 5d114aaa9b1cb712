#include "genwar/planning.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "genwar/log.h"

namespace genwar {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

// All unsigned integers appearing in the text, left to right.
std::vector<int> extract_ints(const std::string& s) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t end = i;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
      if (end - i <= 6) out.push_back(std::stoi(s.substr(i, end - i)));
      i = end;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace

Target parse_target(const std::string& text) {
  Target t;
  t.text = trim(text);
  const std::string low = lower(t.text);
  if (low.empty() || low == "-") return t;
  if (low == "cp" || contains(low, "control point")) {
    t.kind = Target::Kind::control_point;
    return t;
  }
  const std::vector<int> nums = extract_ints(low);
  if (nums.size() >= 2 && (contains(low, ",") || contains(low, "hex"))) {
    t.kind = Target::Kind::hex;
    t.cell = HexCoord{nums[0], nums[1]};
    return t;
  }
  if (!nums.empty()) {
    t.kind = Target::Kind::unit;
    t.unit_id = nums[0];
    return t;
  }
  return t;  // words only: keep the text, point at nothing concrete
}

std::string format_assignment(const TaskAssignment& a) {
  const std::string target = a.target.text.empty() ? "-" : a.target.text;
  return "unit " + std::to_string(a.unit) + " | " + a.intent + " | " + target + " | " +
         std::to_string(a.code);
}

std::optional<TaskAssignment> parse_assignment_line(const std::string& line) {
  const std::string text = trim(line);
  const std::string low = lower(text);
  const std::size_t at = low.find("unit");
  if (at == std::string::npos) return std::nullopt;
  const std::vector<std::string> fields = split(text.substr(at), '|');
  if (fields.size() != 4) return std::nullopt;

  TaskAssignment a;
  const std::vector<int> ids = extract_ints(fields[0]);
  if (ids.size() != 1) return std::nullopt;
  a.unit = ids[0];
  a.intent = trim(fields[1]);
  if (a.intent.empty()) return std::nullopt;
  a.target = parse_target(fields[2]);
  const std::string code_text = trim(fields[3]);
  const std::vector<int> codes = extract_ints(code_text);
  if (codes.size() != 1 || code_text.find_first_not_of("0123456789 ") != std::string::npos)
    return std::nullopt;
  a.code = codes[0];
  return a;
}

namespace {

// Free-prose extraction for replies written as sentences. Each clause names
// its subject units first ("red agents 4-10", "unit 3"), so the first
// unit-number group is the subject and any later one is the target.
std::vector<TaskAssignment> parse_plan_prose(const std::string& reply) {
  std::vector<TaskAssignment> out;
  std::string clause;
  std::vector<std::string> clauses;
  for (char c : reply) {
    if (c == '.' || c == ';' || c == ',' || c == '\n') {
      clauses.push_back(clause);
      clause.clear();
    } else {
      clause += c;
    }
  }
  clauses.push_back(clause);

  for (const std::string& raw : clauses) {
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const std::string low = lower(text);

    // Subject: first "agent(s)/unit(s) a" or "a-b" group in the clause.
    std::size_t anchor = low.find("agent");
    if (anchor == std::string::npos) anchor = low.find("unit");
    if (anchor == std::string::npos) continue;
    std::size_t i = anchor;
    while (i < low.size() && !std::isdigit(static_cast<unsigned char>(low[i]))) ++i;
    if (i == low.size()) continue;
    std::size_t end = i;
    while (end < low.size() && std::isdigit(static_cast<unsigned char>(low[end]))) ++end;
    int first = std::stoi(low.substr(i, end - i));
    int last = first;
    if (end < low.size() && (low[end] == '-' || low.compare(end, 4, " to ") == 0)) {
      const std::size_t digits = low.find_first_of("0123456789", end);
      if (digits != std::string::npos) {
        std::size_t e2 = digits;
        while (e2 < low.size() && std::isdigit(static_cast<unsigned char>(low[e2]))) ++e2;
        last = std::stoi(low.substr(digits, e2 - digits));
        end = e2;
      }
    }
    if (last < first) std::swap(first, last);
    if (last - first > 64) continue;  // runaway range: not a unit list

    const std::string rest = low.substr(end);
    TaskAssignment a;
    a.intent = text;
    if (contains(rest, "shoot") || contains(rest, "engag") || contains(rest, "attack") ||
        contains(rest, "fire") || contains(rest, "aim")) {
      a.code = 8;
      // Target: the last unit number mentioned after the subject.
      const std::vector<int> nums = extract_ints(rest);
      if (!nums.empty()) {
        a.target.kind = Target::Kind::unit;
        a.target.unit_id = nums.back();
        a.target.text = "unit " + std::to_string(nums.back());
      }
    } else if (contains(rest, "acceler") || contains(rest, "higher speed") ||
               contains(rest, "rush")) {
      a.code = 7;
      if (contains(rest, "control point")) {
        a.target.kind = Target::Kind::control_point;
        a.target.text = "control point";
      }
    } else if (contains(rest, "defend")) {
      a.code = 9;
    } else if (contains(rest, "evade") || contains(rest, "retreat")) {
      a.code = 10;
    } else if (contains(rest, "move") || contains(rest, "advance") || contains(rest, "toward")) {
      a.code = 1;  // canonical move; direction resolves against the target
      if (contains(rest, "control point")) {
        a.target.kind = Target::Kind::control_point;
        a.target.text = "control point";
      }
    } else {
      continue;  // no recognizable verb
    }

    for (int id = first; id <= last; ++id) {
      TaskAssignment per = a;
      per.unit = id;
      out.push_back(per);
    }
  }
  return out;
}

}  // namespace

std::vector<TaskAssignment> parse_plan_reply(const std::string& reply,
                                             const std::vector<int>& unit_ids) {
  std::vector<TaskAssignment> parsed;
  for (const std::string& line : split(reply, '\n'))
    if (auto a = parse_assignment_line(line)) parsed.push_back(*a);
  if (parsed.empty()) parsed = parse_plan_prose(reply);

  // Keep only known units; the latest line for a unit wins.
  std::map<int, TaskAssignment> by_unit;
  for (TaskAssignment& a : parsed) {
    if (std::find(unit_ids.begin(), unit_ids.end(), a.unit) == unit_ids.end()) {
      log_warning("plan line for unknown unit " + std::to_string(a.unit) + " dropped");
      continue;
    }
    by_unit[a.unit] = std::move(a);
  }
  std::vector<TaskAssignment> out;
  for (int id : unit_ids) {
    auto it = by_unit.find(id);
    if (it != by_unit.end()) out.push_back(it->second);
  }
  return out;
}

std::string render_plan_prompt(const StrategicPrompt& prompt, const PromptLibrary& prompts) {
  std::string units;
  for (std::size_t i = 0; i < prompt.unit_ids.size(); ++i) {
    if (i > 0) units += ", ";
    units += std::to_string(prompt.unit_ids[i]);
  }
  return prompts.render("plan",
                        {{"expert_doc", expert_block(prompt.expert_doc)},
                         {"side", side_name(prompt.side)},
                         {"tick", std::to_string(prompt.tick)},
                         {"control_point", "hex " + hex_id_string(prompt.control_point)},
                         {"summary", prompt.summary.empty() ? "(none yet)" : prompt.summary},
                         {"observations",
                          prompt.observations.empty() ? "(none)" : prompt.observations},
                         {"suggestions", prompt.suggestions},
                         {"units", units}});
}

std::string summarize_situation(const SideView& view, const std::string& expert_doc,
                                const std::string& prior_summary,
                                const std::string& memories_text, Backend& backend,
                                const PromptLibrary& prompts) {
  if (view.friendlies.empty())
    throw PlanningError("cannot summarize for a side with no living units");
  std::string observations;
  for (const ObservationRecord& o : view.observations) observations += o.description + "\n";
  if (!memories_text.empty()) observations += memories_text;
  const std::string prompt = prompts.render(
      "summary", {{"expert_doc", expert_block(expert_doc)},
                  {"side", side_name(view.side)},
                  {"tick", std::to_string(view.tick)},
                  {"control_point", "hex " + hex_id_string(view.map.control_point)},
                  {"summary", prior_summary.empty() ? "(none yet)" : prior_summary},
                  {"observations", observations.empty() ? "(none)" : observations}});
  return trim(backend.complete(CompletionRequest::user(Tier::strategic, prompt)));
}

std::vector<TaskAssignment> plan(const StrategicPrompt& prompt, Backend& backend,
                                 const PromptLibrary& prompts) {
  if (prompt.unit_ids.empty()) throw PlanningError("planning with no units to order");
  const std::string rendered = render_plan_prompt(prompt, prompts);

  CompletionRequest request = CompletionRequest::user(Tier::strategic, rendered);
  std::string reply = backend.complete(request);
  std::vector<TaskAssignment> assignments = parse_plan_reply(reply, prompt.unit_ids);
  if (assignments.size() == prompt.unit_ids.size()) return assignments;

  // One stricter retry: repeat the exchange and spell out what was missing.
  std::string missing;
  for (int id : prompt.unit_ids) {
    const bool have = std::any_of(assignments.begin(), assignments.end(),
                                  [id](const TaskAssignment& a) { return a.unit == id; });
    if (!have) missing += (missing.empty() ? "" : ", ") + std::to_string(id);
  }
  request.messages.push_back({Role::assistant, reply});
  request.messages.push_back(
      {Role::user,
       "That reply could not be used: unit(s) " + missing +
           " received no order. Reply again with exactly one line per unit, each in the "
           "exact form `unit <id> | <intent> | <target or -> | <action code>`, and "
           "nothing else."});
  reply = backend.complete(request);
  assignments = parse_plan_reply(reply, prompt.unit_ids);
  if (assignments.size() == prompt.unit_ids.size()) return assignments;
  throw PlanningError("strategic reply still incomplete after retry (covered " +
                      std::to_string(assignments.size()) + " of " +
                      std::to_string(prompt.unit_ids.size()) + " units)");
}

Suggestion tactical_review(const TaskAssignment& a, const SideView& view, Backend& backend,
                           const PromptLibrary& prompts) {
  const Unit* unit = view.friendly(a.unit);
  if (unit == nullptr || !unit->alive)
    throw PlanningError("tactical review for missing unit " + std::to_string(a.unit));

  std::string local;
  for (const ObservationRecord* o : view.observations_of(a.unit)) local += o->description + "\n";
  const std::string prompt = prompts.render(
      "tactical_review", {{"side", side_name(view.side)},
                          {"unit_id", std::to_string(a.unit)},
                          {"position", "hex " + hex_id_string(unit->pos)},
                          {"unit_view", local.empty() ? "(nothing in sight)" : local},
                          {"assignment", format_assignment(a)}});
  const std::string reply =
      trim(backend.complete(CompletionRequest::user(Tier::tactical, prompt)));
  const std::string low = lower(reply);

  Suggestion s;
  s.unit = a.unit;
  if (low.rfind("accept", 0) == 0) return s;

  if (low.rfind("modify", 0) == 0) {
    const std::size_t colon = reply.find(':');
    const std::size_t reason_at = low.find("reason:");
    if (colon != std::string::npos && reason_at != std::string::npos && reason_at > colon) {
      std::string proposed = trim(reply.substr(colon + 1, reason_at - colon - 1));
      while (!proposed.empty() && proposed.back() == '|') {
        proposed.pop_back();
        proposed = trim(proposed);
      }
      const std::string reason = trim(reply.substr(reason_at + 7));
      if (!proposed.empty() && !reason.empty()) {
        s.verdict = Suggestion::Verdict::modify;
        s.proposed = proposed;
        s.proposed_assignment = parse_assignment_line(proposed);
        s.reason = reason;
        return s;
      }
    }
  }

  log_warning("tactical reply for unit " + std::to_string(a.unit) +
              " was not parseable; treating as accept");
  return s;
}

NegotiationResult negotiate(const SideView& view, StrategicPrompt prompt, Backend& backend,
                            const PromptLibrary& prompts, int max_rounds) {
  if (max_rounds < 1) throw PlanningError("negotiation needs max_rounds >= 1");
  NegotiationResult result;
  NegotiationTranscript& transcript = result.transcript;

  try {
    for (int round = 1; round <= max_rounds; ++round) {
      NegotiationRound record;
      record.plan = plan(prompt, backend, prompts);
      for (const TaskAssignment& a : record.plan)
        record.suggestions.push_back(tactical_review(a, view, backend, prompts));

      std::string requests;
      for (const Suggestion& s : record.suggestions)
        if (s.verdict == Suggestion::Verdict::modify)
          requests += "unit " + std::to_string(s.unit) + " asks to change its order to \"" +
                      s.proposed + "\" because " + s.reason + "\n";

      transcript.rounds.push_back(record);
      result.plan = transcript.rounds.back().plan;
      if (requests.empty()) {
        transcript.terminated_by = NegotiationEnd::fixpoint;
        return result;
      }
      prompt.suggestions = requests;
    }
  } catch (const std::exception& e) {
    throw NegotiationError(std::string("negotiation aborted: ") + e.what(), transcript);
  }
  transcript.terminated_by = NegotiationEnd::round_cap;
  return result;
}

namespace {

// Best strictly-improving free step toward goal, scanning the fixed
// direction order; nullopt when nothing improves.
std::optional<Direction> greedy_free_step(const GameState& state, const Unit& unit,
                                          const HexCoord& goal) {
  const int here = hex_distance(unit.pos, goal);
  std::optional<Direction> pick;
  int best = here;
  for (Direction d : kAllDirections) {
    const HexCoord next = hex_step(unit.pos, d);
    if (!state.map.in_bounds(next) || state.living_unit_at(next) != nullptr) continue;
    const int dist = hex_distance(next, goal);
    if (dist < best) {
      best = dist;
      pick = d;
    }
  }
  return pick;
}

std::optional<HexCoord> resolve_target_cell(const Target& t, const GameState& state) {
  switch (t.kind) {
    case Target::Kind::none: return std::nullopt;
    case Target::Kind::control_point: return state.map.control_point;
    case Target::Kind::hex:
      return state.map.in_bounds(t.cell) ? std::optional<HexCoord>(t.cell) : std::nullopt;
    case Target::Kind::unit: {
      const Unit* u = state.find_unit(t.unit_id);
      if (u != nullptr && u->alive) return u->pos;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Action degrade(const TaskAssignment& a, const std::string& why) {
  log_warning("order for unit " + std::to_string(a.unit) + " (" + format_assignment(a) +
              ") degraded to hold: " + why);
  return Action::hold();
}

}  // namespace

Action assignment_to_action(const TaskAssignment& a, const GameState& state) {
  const Unit* unit = state.find_unit(a.unit);
  if (unit == nullptr || !unit->alive)
    throw PlanningError("order for dead or unknown unit " + std::to_string(a.unit));
  if (a.code < 1 || a.code > 10)
    throw PlanningError("unknown action code " + std::to_string(a.code) + " for unit " +
                        std::to_string(a.unit));

  const auto is_legal = [&](const Action& action) {
    const std::vector<Action> legal = legal_actions(state, a.unit);
    return std::find(legal.begin(), legal.end(), action) != legal.end();
  };
  const std::optional<HexCoord> goal = resolve_target_cell(a.target, state);

  if (a.code >= 1 && a.code <= 6) {
    Direction dir = kAllDirections[a.code - 1];
    if (goal && *goal != unit->pos) {
      if (auto better = greedy_free_step(state, *unit, *goal)) dir = *better;
    }
    const Action action = Action::move(dir);
    return is_legal(action) ? action : degrade(a, "move blocked");
  }

  if (a.code == 7) {
    const HexCoord dest = goal.value_or(state.map.control_point);
    if (dest == unit->pos) return degrade(a, "already on the target cell");
    const int dist = hex_distance(unit->pos, dest);
    std::optional<Direction> dir = greedy_free_step(state, *unit, dest);
    if (!dir) return degrade(a, "no free step toward the target");
    // One cell out: a plain move lands exactly on the target.
    const Action action = dist <= 1 ? Action::move(*dir) : Action::accel_move(*dir);
    return is_legal(action) ? action : degrade(a, "fast move blocked");
  }

  if (a.code == 8) {
    if (a.target.kind != Target::Kind::unit) return degrade(a, "shoot order without a unit target");
    const Action action = Action::shoot(a.target.unit_id);
    return is_legal(action) ? action : degrade(a, "target not engageable");
  }

  if (a.code == 9) return Action::defend();
  return Action::evade();  // code 10
}

std::string symbol_for_intent(const std::string& intent) {
  const std::string low = lower(intent);
  if (contains(low, "captur") || contains(low, "control") || contains(low, "seiz")) return "!";
  if (contains(low, "aim") || contains(low, "shoot") || contains(low, "engag") ||
      contains(low, "attack") || contains(low, "fire"))
    return "→";
  return "·";
}

}  // namespace genwar
