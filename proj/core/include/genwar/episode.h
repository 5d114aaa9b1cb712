#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "genwar/backend.h"
#include "genwar/memory.h"
#include "genwar/planning.h"
#include "genwar/prompts.h"
#include "genwar/reflection.h"
#include "genwar/scenario.h"
#include "genwar/sim.h"

namespace genwar {

// How a side is driven: the generative-agent pipeline without/with the
// domain document, the fixed-doctrine rule opponent, or uniform random.
enum class PolicyKind { gwa, gwae, rule, random };

const char* policy_kind_name(PolicyKind k);
std::optional<PolicyKind> policy_kind_from_name(const std::string& name);
inline bool is_agent_policy(PolicyKind k) { return k == PolicyKind::gwa || k == PolicyKind::gwae; }

struct TaskScores {
  double kill = 0.0;
  double goal = 0.0;
  double survive = 0.0;
};

struct EpisodeResult {
  std::uint64_t seed = 0;
  std::optional<Side> winner;  // empty = draw
  int ticks = 0;
  int kills_by_red = 0;
  int kills_by_blue = 0;
  std::optional<Side> captured_by;  // set when the win came from the control point
  int red_initial = 0;
  int blue_initial = 0;
  int red_survivors = 0;
  int blue_survivors = 0;
  int red_holding_ticks = 0;
  int blue_holding_ticks = 0;
  TaskScores red_scores;
  TaskScores blue_scores;
  std::uint64_t trajectory_hash = 0;
  bool failed = false;     // aborted by a backend failure mid-episode
  std::string failure;
};

std::string winner_name(const std::optional<Side>& winner);

// Per-run knobs of the agent pipeline, shared by both agent-driven sides.
struct AgentConfig {
  RetrievalWeights weights;
  ReflectionConfig reflection;
  int max_rounds = 3;
  std::string expert_doc;  // raw document text; applied only to gwae sides
};

struct EpisodeSetup {
  Scenario scenario;
  PolicyKind red = PolicyKind::rule;
  PolicyKind blue = PolicyKind::random;
  std::uint64_t seed = 0;
  AgentConfig agents;
  // Required when either side is agent-driven; unused otherwise.
  std::shared_ptr<Backend> backend;
  const PromptLibrary* prompts = nullptr;
  // When non-empty, prompt/reply logs, per-tick events, negotiation records,
  // and memory dumps land here (created on demand). A backend abort still
  // writes everything gathered so far.
  std::string transcript_dir;
};

// One full game: observe -> remember -> maybe reflect -> plan (or call the
// baseline policy) -> act -> step, until a winner, mutual annihilation, or
// max_ticks. Backend failures abort the episode into result.failed rather
// than throwing.
EpisodeResult run_episode(const EpisodeSetup& setup);

// kill / goal / survive totals for one side of a finished episode:
// 100 per enemy destroyed, 50 per tick holding the control point plus 5000
// for winning by capture, 1000 per surviving friendly.
TaskScores score_tasks(const EpisodeResult& result, Side side);

}  // namespace genwar
