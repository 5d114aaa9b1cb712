#include "genwar/episode.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <utility>

#include "genwar/baselines.h"
#include "genwar/log.h"
#include "genwar/scorers.h"
#include "genwar/transcript.h"
#include "genwar/view.h"
#include "json.hpp"

namespace genwar {

const char* policy_kind_name(PolicyKind k) {
  switch (k) {
    case PolicyKind::gwa: return "gwa";
    case PolicyKind::gwae: return "gwae";
    case PolicyKind::rule: return "rule";
    case PolicyKind::random: return "random";
  }
  return "rule";
}

std::optional<PolicyKind> policy_kind_from_name(const std::string& name) {
  if (name == "gwa") return PolicyKind::gwa;
  if (name == "gwae") return PolicyKind::gwae;
  if (name == "rule") return PolicyKind::rule;
  if (name == "random") return PolicyKind::random;
  return std::nullopt;
}

std::string winner_name(const std::optional<Side>& winner) {
  return winner ? side_name(*winner) : "draw";
}

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Episode-scoped sink for events.jsonl, negotiation records, memory dumps
// and the prompt/reply log. Every method is a no-op when no directory was
// requested.
class EpisodeWriter {
 public:
  EpisodeWriter(std::string dir, std::shared_ptr<RecordingBackend> recorder)
      : dir_(std::move(dir)), recorder_(std::move(recorder)) {
    if (enabled()) {
      fs::create_directories(dir_);
      events_.open(fs::path(dir_) / "events.jsonl");
    }
  }

  bool enabled() const { return !dir_.empty(); }

  void event(const ordered_json& entry) {
    if (events_.is_open()) events_ << entry.dump() << '\n';
  }

  void memory_dump(int unit_id, const std::string& side, const MemoryStream& stream) {
    if (!enabled()) return;
    fs::create_directories(fs::path(dir_) / "memories");
    std::ofstream out(fs::path(dir_) / "memories" /
                      (side + "_unit_" + std::to_string(unit_id) + ".tsv"));
    stream.write_log(out);
  }

  void finish() {
    if (!enabled()) return;
    if (recorder_) {
      std::ofstream calls(fs::path(dir_) / "calls.jsonl");
      calls << recorder_->to_jsonl();
    }
    events_.close();
  }

 private:
  std::string dir_;
  std::shared_ptr<RecordingBackend> recorder_;
  std::ofstream events_;
};

class SideController {
 public:
  virtual ~SideController() = default;
  virtual ActionMap decide(const GameState& state, const SideView& view) = 0;
  virtual void dump_memories(EpisodeWriter& writer) {}
};

class BaselineController : public SideController {
 public:
  explicit BaselineController(std::unique_ptr<Policy> policy) : policy_(std::move(policy)) {}
  ActionMap decide(const GameState&, const SideView& view) override {
    return policy_->decide(view);
  }

 private:
  std::unique_ptr<Policy> policy_;
};

// The generative-agent side: per-unit memory streams feeding reflection and
// the two-layer strategic/tactical planning loop.
class AgentController : public SideController {
 public:
  AgentController(Side side, const AgentConfig& cfg, bool use_expert,
                  std::shared_ptr<Backend> backend, const PromptLibrary& prompts,
                  EpisodeWriter& writer)
      : side_(side),
        cfg_(cfg),
        expert_doc_(use_expert ? cfg.expert_doc : ""),
        backend_(std::move(backend)),
        prompts_(prompts),
        writer_(writer),
        importance_(backend_, prompts_),
        relevance_(backend_, prompts_) {}

  ActionMap decide(const GameState& state, const SideView& view) override {
    record_observations(view);
    run_reflections(view.tick);
    summary_ = summarize_situation(view, expert_doc_, summary_, "", *backend_, prompts_);

    StrategicPrompt prompt;
    prompt.side = side_;
    prompt.tick = view.tick;
    prompt.control_point = view.map.control_point;
    for (const Unit& u : view.friendlies) prompt.unit_ids.push_back(u.id);
    prompt.summary = summary_;
    prompt.observations = observations_text(view);
    prompt.expert_doc = expert_doc_;

    NegotiationResult outcome;
    try {
      outcome = negotiate(view, prompt, *backend_, prompts_, cfg_.max_rounds);
    } catch (const NegotiationError& e) {
      log_negotiation(view.tick, e.transcript);
      throw;
    }
    log_negotiation(view.tick, outcome.transcript);

    ActionMap actions;
    for (const TaskAssignment& a : outcome.plan) {
      remember_order(view.tick, a);
      actions.emplace(a.unit, assignment_to_action(a, state));
    }
    return actions;
  }

  void dump_memories(EpisodeWriter& writer) override {
    for (const auto& [id, stream] : streams_)
      writer.memory_dump(id, side_name(side_), stream);
  }

 private:
  MemoryStream& stream_for(int unit_id) {
    auto it = streams_.find(unit_id);
    if (it == streams_.end())
      it = streams_.emplace(unit_id, MemoryStream(unit_id, cfg_.weights)).first;
    return it->second;
  }

  void record_observations(const SideView& view) {
    for (const Unit& u : view.friendlies) {
      MemoryStream& stream = stream_for(u.id);
      for (const ObservationRecord* o : view.observations_of(u.id))
        stream.record(MemoryKind::observation, view.tick, o->description,
                      importance_.importance(o->description));
    }
  }

  void run_reflections(int tick) {
    for (auto& [id, stream] : streams_) {
      if (!should_reflect(stream, cfg_.reflection)) continue;
      const ReflectionOutcome outcome = generate_reflection(
          stream, cfg_.reflection, *backend_, prompts_, relevance_, importance_, tick);
      for (const ReflectionRecord& r : outcome.insights) {
        ordered_json entry;
        entry["type"] = "reflection";
        entry["tick"] = tick;
        entry["side"] = side_name(side_);
        entry["unit"] = id;
        entry["question"] = r.question;
        entry["insight"] = r.insight;
        entry["sources"] = r.sources;
        writer_.event(entry);
      }
    }
  }

  // This tick's observations plus each unit's retrieved recollections.
  std::string observations_text(const SideView& view) {
    std::string text;
    for (const ObservationRecord& o : view.observations) text += o.description + "\n";
    for (const Unit& u : view.friendlies) {
      MemoryStream& stream = stream_for(u.id);
      if (stream.empty()) continue;
      const std::string query = "what should " + std::string(side_name(side_)) + " unit " +
                                std::to_string(u.id) +
                                " do next to take the control point";
      for (const ScoredMemory& m : stream.retrieve(query, view.tick, relevance_))
        text += "unit " + std::to_string(u.id) + " recalls: " +
                stream.memory(m.id).description + "\n";
    }
    return text;
  }

  void remember_order(int tick, const TaskAssignment& a) {
    const std::string description = std::string(side_name(side_)) + " agent " +
                                    std::to_string(a.unit) + " is ordered: " + a.intent;
    stream_for(a.unit).record(MemoryKind::plan, tick, description,
                              importance_.importance(description));
  }

  void log_negotiation(int tick, const NegotiationTranscript& transcript) {
    ordered_json entry;
    entry["type"] = "negotiation";
    entry["tick"] = tick;
    entry["side"] = side_name(side_);
    entry["rounds"] = ordered_json::array();
    for (const NegotiationRound& round : transcript.rounds) {
      ordered_json rec;
      rec["plan"] = ordered_json::array();
      for (const TaskAssignment& a : round.plan) {
        rec["plan"].push_back({{"line", format_assignment(a)},
                               {"symbol", symbol_for_intent(a.intent)}});
      }
      rec["suggestions"] = ordered_json::array();
      for (const Suggestion& s : round.suggestions) {
        ordered_json sug;
        sug["unit"] = s.unit;
        sug["verdict"] = s.verdict == Suggestion::Verdict::accept ? "accept" : "modify";
        if (s.verdict == Suggestion::Verdict::modify) {
          sug["proposed"] = s.proposed;
          sug["reason"] = s.reason;
        }
        rec["suggestions"].push_back(sug);
      }
      entry["rounds"].push_back(rec);
    }
    entry["terminated_by"] =
        transcript.terminated_by == NegotiationEnd::fixpoint ? "fixpoint" : "round_cap";
    writer_.event(entry);
  }

  Side side_;
  AgentConfig cfg_;
  std::string expert_doc_;
  std::shared_ptr<Backend> backend_;
  const PromptLibrary& prompts_;
  EpisodeWriter& writer_;
  PromptImportanceScorer importance_;
  PromptRelevanceScorer relevance_;
  std::map<int, MemoryStream> streams_;
  std::string summary_;
};

std::unique_ptr<SideController> make_controller(Side side, PolicyKind kind,
                                                const EpisodeSetup& setup,
                                                std::shared_ptr<Backend> backend,
                                                EpisodeWriter& writer) {
  switch (kind) {
    case PolicyKind::rule:
      return std::make_unique<BaselineController>(std::make_unique<RulePolicy>());
    case PolicyKind::random:
      return std::make_unique<BaselineController>(std::make_unique<RandomPolicy>(
          derive_seed(setup.seed, side == Side::red ? 1 : 2)));
    case PolicyKind::gwa:
    case PolicyKind::gwae:
      if (!backend || setup.prompts == nullptr)
        throw BackendError("agent-driven side needs a backend and prompt library");
      return std::make_unique<AgentController>(side, setup.agents, kind == PolicyKind::gwae,
                                               std::move(backend), *setup.prompts, writer);
  }
  throw BackendError("unhandled policy kind");
}

}  // namespace

EpisodeResult run_episode(const EpisodeSetup& setup) {
  EpisodeResult result;
  result.seed = setup.seed;

  // Transcript runs observe the backend through a recording shim so the
  // prompt/reply log can be dumped even on an abort.
  std::shared_ptr<Backend> backend = setup.backend;
  std::shared_ptr<RecordingBackend> recorder;
  const bool agents_present = is_agent_policy(setup.red) || is_agent_policy(setup.blue);
  if (!setup.transcript_dir.empty() && agents_present && backend) {
    recorder = std::make_shared<RecordingBackend>(backend);
    backend = recorder;
  }
  EpisodeWriter writer(setup.transcript_dir, recorder);

  GameState state = make_initial_state(setup.scenario, setup.seed);
  result.red_initial = state.count_living(Side::red);
  result.blue_initial = state.count_living(Side::blue);

  std::uint64_t hash = chain_digest(0, state_digest(state));

  std::unique_ptr<SideController> red;
  std::unique_ptr<SideController> blue;
  try {
    red = make_controller(Side::red, setup.red, setup, backend, writer);
    blue = make_controller(Side::blue, setup.blue, setup, backend, writer);

    while (!state.winner && state.tick < setup.scenario.max_ticks &&
           state.count_living(Side::red) + state.count_living(Side::blue) > 0) {
      ActionMap actions = red->decide(state, build_side_view(state, Side::red));
      ActionMap blue_actions = blue->decide(state, build_side_view(state, Side::blue));
      actions.insert(blue_actions.begin(), blue_actions.end());
      actions = sanitize_actions(state, actions);

      state = step(state, actions);
      hash = chain_digest(hash, state_digest(state));

      ordered_json entry;
      entry["type"] = "tick";
      entry["tick"] = state.tick - 1;
      entry["actions"] = ordered_json::object();
      for (const auto& [id, action] : actions)
        entry["actions"][std::to_string(id)] = action_to_string(action);
      entry["digest"] = std::to_string(state_digest(state));
      writer.event(entry);

      for (Side s : {Side::red, Side::blue}) {
        bool holding = false;
        for (const Unit& u : state.units)
          if (u.side == s && u.alive && u.pos == state.map.control_point) holding = true;
        if (holding) (s == Side::red ? result.red_holding_ticks : result.blue_holding_ticks)++;
      }
    }
  } catch (const std::exception& e) {
    result.failed = true;
    result.failure = e.what();
    log_warning("episode seed " + std::to_string(setup.seed) + " aborted: " + e.what());
  }

  result.ticks = state.tick;
  result.winner = state.winner;
  result.red_survivors = state.count_living(Side::red);
  result.blue_survivors = state.count_living(Side::blue);
  result.kills_by_red = result.blue_initial - result.blue_survivors;
  result.kills_by_blue = result.red_initial - result.red_survivors;
  if (state.winner) {
    for (const Unit& u : state.units)
      if (u.side == *state.winner && u.alive && u.pos == state.map.control_point)
        result.captured_by = state.winner;
  }
  result.trajectory_hash = hash;
  result.red_scores = score_tasks(result, Side::red);
  result.blue_scores = score_tasks(result, Side::blue);

  if (writer.enabled()) {
    ordered_json tail;
    tail["type"] = "result";
    tail["winner"] = winner_name(result.winner);
    tail["ticks"] = result.ticks;
    tail["trajectory_hash"] = std::to_string(result.trajectory_hash);
    if (result.failed) tail["failure"] = result.failure;
    writer.event(tail);
    if (red) red->dump_memories(writer);
    if (blue) blue->dump_memories(writer);
    writer.finish();
  }
  return result;
}

TaskScores score_tasks(const EpisodeResult& result, Side side) {
  TaskScores s;
  const bool is_red = side == Side::red;
  s.kill = 100.0 * (is_red ? result.kills_by_red : result.kills_by_blue);
  const int holding = is_red ? result.red_holding_ticks : result.blue_holding_ticks;
  s.goal = 50.0 * holding + (result.captured_by == side ? 5000.0 : 0.0);
  s.survive = 1000.0 * (is_red ? result.red_survivors : result.blue_survivors);
  return s;
}

}  // namespace genwar
