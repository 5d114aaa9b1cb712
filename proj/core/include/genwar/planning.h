#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "genwar/backend.h"
#include "genwar/prompts.h"
#include "genwar/sim.h"
#include "genwar/view.h"

namespace genwar {

struct PlanningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Where an assigned task points: nothing, a specific unit, a map cell, or
// the control point. The raw text is kept as written by the planner.
struct Target {
  enum class Kind { none, unit, hex, control_point };
  Kind kind = Kind::none;
  int unit_id = 0;
  HexCoord cell{0, 0};
  std::string text;
};

// Parses "-", "cp"/"control point", "r,c", or anything holding a unit number
// (e.g. "blue 2", "unit 9", "9").
Target parse_target(const std::string& text);

// One commander order: which unit, what it should be doing in words, where
// the task points, and the coded action (1-6 move by direction, 7 fast move,
// 8 shoot, 9 defend, 10 evade).
struct TaskAssignment {
  int unit = 0;
  std::string intent;
  Target target;
  int code = 0;
};

// Canonical one-line form: "unit <id> | <intent> | <target or -> | <code>".
std::string format_assignment(const TaskAssignment& a);

// Parses one line of the canonical grammar; nullopt when the line does not
// fit it.
std::optional<TaskAssignment> parse_assignment_line(const std::string& line);

// Strict line-by-line parse, then a free-prose fallback for replies written
// as sentences ("agents 4-10 will move towards the control point"). Only
// assignments for ids in unit_ids are kept; a later assignment for the same
// unit overrides an earlier one.
std::vector<TaskAssignment> parse_plan_reply(const std::string& reply,
                                             const std::vector<int>& unit_ids);

struct Suggestion {
  enum class Verdict { accept, modify };
  int unit = 0;
  Verdict verdict = Verdict::accept;
  std::string proposed;  // proposed replacement line (modify only)
  std::optional<TaskAssignment> proposed_assignment;
  std::string reason;    // modify only
};

struct NegotiationRound {
  std::vector<TaskAssignment> plan;
  std::vector<Suggestion> suggestions;
};

enum class NegotiationEnd { fixpoint, round_cap };

struct NegotiationTranscript {
  std::vector<NegotiationRound> rounds;
  NegotiationEnd terminated_by = NegotiationEnd::fixpoint;
};

// Negotiation abort carrying everything that happened before the backend
// failed, so callers can persist the partial transcript.
struct NegotiationError : std::runtime_error {
  NegotiationError(const std::string& what, NegotiationTranscript partial)
      : std::runtime_error(what), transcript(std::move(partial)) {}
  NegotiationTranscript transcript;
};

// Inputs to one strategic call: the three prompt sections plus addressing
// context. expert_doc is raw document text; the template wraps it.
struct StrategicPrompt {
  Side side = Side::red;
  int tick = 0;
  HexCoord control_point{0, 0};
  std::vector<int> unit_ids;  // living friendlies, ascending
  std::string summary;
  std::string observations;
  std::string expert_doc;
  std::string suggestions = "(none)";
};

// The rendered strategic planning prompt (exposed for prompt-diff tests).
std::string render_plan_prompt(const StrategicPrompt& prompt, const PromptLibrary& prompts);

// Situation summary from the strategic tier over the side's observations.
// prior_summary may be empty on the first tick; memories_text carries any
// retrieved recollections to fold in.
std::string summarize_situation(const SideView& view, const std::string& expert_doc,
                                const std::string& prior_summary,
                                const std::string& memories_text, Backend& backend,
                                const PromptLibrary& prompts);

// One strategic planning call: renders the prompt, parses the reply, and
// checks that every listed unit got exactly one assignment. An incomplete or
// unparsable reply earns one stricter retry, then a PlanningError.
std::vector<TaskAssignment> plan(const StrategicPrompt& prompt, Backend& backend,
                                 const PromptLibrary& prompts);

// Unit-level check of one assignment against only that unit's own
// observations. Replies that parse as neither accept nor a complete modify
// count as accept with a logged warning.
Suggestion tactical_review(const TaskAssignment& a, const SideView& view, Backend& backend,
                           const PromptLibrary& prompts);

struct NegotiationResult {
  std::vector<TaskAssignment> plan;
  NegotiationTranscript transcript;
};

// Alternating plan/review rounds: replanning prompts carry the previous
// round's modify suggestions; stops when every unit accepts (fixpoint) or
// after max_rounds (last strategic plan adopted as ordered).
NegotiationResult negotiate(const SideView& view, StrategicPrompt prompt, Backend& backend,
                            const PromptLibrary& prompts, int max_rounds);

// Converts an order into a concrete sim action. Move codes steer by greedy
// step toward the target cell when one is given; a fast move without a
// target heads for the control point. Orders that come out illegal on the
// ground degrade to Hold with a logged note. Unknown codes throw.
Action assignment_to_action(const TaskAssignment& a, const GameState& state);

// Map-overlay glyph for an intent: capture/control "!", aim/shoot "→",
// otherwise "·".
std::string symbol_for_intent(const std::string& intent);

}  // namespace genwar
