#include <memory>

#include "doctest.h"
#include "genwar/planning.h"
#include "genwar/prompts.h"
#include "genwar/scripted_backend.h"
#include "genwar/transcript.h"
#include "genwar/view.h"

using namespace genwar;

namespace {

GameState skirmish_state() {
  GameState s;
  s.map.rows = 14;
  s.map.cols = 14;
  s.map.terrain.assign(14 * 14, Terrain::open);
  s.map.control_point = {6, 6};
  s.rng = Rng(1);
  Unit u;
  u.id = 1;
  u.side = Side::red;
  u.pos = {6, 5};  // sees the blue unit
  s.units.push_back(u);
  u.id = 2;
  u.pos = {11, 2};  // too far to see anything hostile
  s.units.push_back(u);
  u.id = 11;
  u.side = Side::blue;
  u.pos = {6, 7};
  s.units.push_back(u);
  return s;
}

StrategicPrompt red_prompt(const GameState& s) {
  StrategicPrompt p;
  p.side = Side::red;
  p.tick = s.tick;
  p.control_point = s.map.control_point;
  p.unit_ids = s.living_ids(Side::red);
  return p;
}

ScriptRule strategic_rule(std::string also, std::string reply) {
  return {"Order every unit", {std::move(also)}, std::nullopt, Tier::strategic,
          std::move(reply)};
}

ScriptRule accept_rule() {
  return {"reply with the single word: accept", {}, std::nullopt, Tier::tactical, "accept"};
}

}  // namespace

TEST_SUITE("planning") {

TEST_CASE("target parsing covers the four shapes") {
  CHECK(parse_target("-").kind == Target::Kind::none);
  CHECK(parse_target("  ").kind == Target::Kind::none);
  CHECK(parse_target("cp").kind == Target::Kind::control_point);
  CHECK(parse_target("the Control Point").kind == Target::Kind::control_point);

  const Target hex = parse_target("6,3");
  CHECK(hex.kind == Target::Kind::hex);
  CHECK(hex.cell == HexCoord{6, 3});
  const Target hex2 = parse_target("hex 14 3");
  CHECK(hex2.kind == Target::Kind::hex);
  CHECK(hex2.cell == HexCoord{14, 3});

  const Target unit = parse_target("blue 2");
  CHECK(unit.kind == Target::Kind::unit);
  CHECK(unit.unit_id == 2);
  CHECK(unit.text == "blue 2");
  CHECK(parse_target("unit 9").unit_id == 9);
  CHECK(parse_target("9").unit_id == 9);

  const Target words = parse_target("the road");
  CHECK(words.kind == Target::Kind::none);
  CHECK(words.text == "the road");
}

TEST_CASE("assignment lines round-trip through the canonical grammar") {
  const auto parsed = parse_assignment_line("unit 1 | shoot | blue 2 | 5");
  REQUIRE(parsed.has_value());
  CHECK(parsed->unit == 1);
  CHECK(parsed->intent == "shoot");
  CHECK(parsed->target.kind == Target::Kind::unit);
  CHECK(parsed->target.unit_id == 2);
  CHECK(parsed->code == 5);
  CHECK(format_assignment(*parsed) == "unit 1 | shoot | blue 2 | 5");

  SUBCASE("case and leading prose do not matter") {
    CHECK(parse_assignment_line("Unit 3 | hold | - | 9").has_value());
    const auto wrapped = parse_assignment_line("I order unit 2 | advance | cp | 1");
    REQUIRE(wrapped.has_value());
    CHECK(wrapped->unit == 2);
    CHECK(wrapped->target.kind == Target::Kind::control_point);
  }

  SUBCASE("near misses are rejected, not guessed at") {
    CHECK_FALSE(parse_assignment_line("advance | cp | 1").has_value());          // no unit
    CHECK_FALSE(parse_assignment_line("unit 1 | advance | cp").has_value());     // 3 fields
    CHECK_FALSE(parse_assignment_line("unit 1 and 2 | go | - | 1").has_value()); // two ids
    CHECK_FALSE(parse_assignment_line("unit 1 |  | - | 1").has_value());         // no intent
    CHECK_FALSE(parse_assignment_line("unit 1 | go | - | code 5").has_value());  // junk in code
    CHECK_FALSE(parse_assignment_line("unit 1 | go | - | 5 5").has_value());     // two codes
    CHECK_FALSE(parse_assignment_line("").has_value());
  }

  SUBCASE("formatting an empty target prints a dash") {
    TaskAssignment a;
    a.unit = 4;
    a.intent = "hold the line";
    a.code = 9;
    CHECK(format_assignment(a) == "unit 4 | hold the line | - | 9");
  }
}

TEST_CASE("plan replies parse strictly first, with a prose fallback") {
  const std::vector<int> ids{1, 2, 3};

  SUBCASE("strict lines win and junk between them is ignored") {
    const auto plan = parse_plan_reply(
        "Here are my orders:\n"
        "unit 1 | take the point | cp | 7\n"
        "(thinking aloud)\n"
        "unit 2 | screen west | - | 9\n"
        "unit 3 | engage | blue 11 | 8\n",
        ids);
    REQUIRE(plan.size() == 3);
    CHECK(plan[0].unit == 1);
    CHECK(plan[0].code == 7);
    CHECK(plan[2].target.unit_id == 11);
  }

  SUBCASE("unknown units are dropped and the last line per unit wins") {
    const auto plan = parse_plan_reply(
        "unit 2 | first version | - | 9\n"
        "unit 99 | not ours | - | 1\n"
        "unit 2 | second version | - | 10\n"
        "unit 1 | advance | cp | 1\n",
        ids);
    REQUIRE(plan.size() == 2);
    // Output follows the roster order, not reply order.
    CHECK(plan[0].unit == 1);
    CHECK(plan[1].unit == 2);
    CHECK(plan[1].intent == "second version");
    CHECK(plan[1].code == 10);
  }

  SUBCASE("sentence-style replies fall back to prose extraction") {
    std::vector<int> ten;
    for (int i = 1; i <= 10; ++i) ten.push_back(i);
    const auto plan = parse_plan_reply(
        "red agent 1-3 will prioritize engaging blue agent 1, and red agent 4-10 will move "
        "towards the control point",
        ten);
    REQUIRE(plan.size() == 10);
    for (int i = 0; i < 3; ++i) {
      CHECK(plan[i].unit == i + 1);
      CHECK(plan[i].code == 8);
      CHECK(plan[i].target.kind == Target::Kind::unit);
      CHECK(plan[i].target.unit_id == 1);
    }
    for (int i = 3; i < 10; ++i) {
      CHECK(plan[i].unit == i + 1);
      CHECK(plan[i].code == 1);
      CHECK(plan[i].target.kind == Target::Kind::control_point);
    }
  }

  SUBCASE("prose understands speed, defense, and retreat verbs") {
    const auto plan = parse_plan_reply(
        "unit 1 will rush the control point. unit 2 should defend; unit 3 must retreat",
        ids);
    REQUIRE(plan.size() == 3);
    CHECK(plan[0].code == 7);
    CHECK(plan[1].code == 9);
    CHECK(plan[2].code == 10);
  }

  SUBCASE("nothing parsable yields an empty plan") {
    CHECK(parse_plan_reply("fog of war, no thoughts", ids).empty());
  }
}

TEST_CASE("the strategic call retries once with a stricter framing") {
  const GameState s = skirmish_state();
  const StrategicPrompt p = red_prompt(s);
  const PromptLibrary prompts = PromptLibrary::builtin();

  SUBCASE("a complete first reply needs no retry") {
    auto backend = std::make_shared<ScriptedBackend>(std::vector<ScriptRule>{
        strategic_rule("(none)", "unit 1 | advance | cp | 1\nunit 2 | advance | cp | 1"),
    });
    RecordingBackend rec(backend);
    const auto plan_out = plan(p, rec, prompts);
    CHECK(plan_out.size() == 2);
    CHECK(rec.calls().size() == 1);
  }

  SUBCASE("an incomplete reply earns exactly one correction") {
    auto backend = std::make_shared<ScriptedBackend>(std::vector<ScriptRule>{
        strategic_rule("(none)", "unit 1 | advance | cp | 1"),  // forgets unit 2
        {"could not be used", {}, std::nullopt, Tier::strategic,
         "unit 1 | advance | cp | 1\nunit 2 | cover the rear | - | 9"},
    });
    RecordingBackend rec(backend);
    const auto plan_out = plan(p, rec, prompts);
    REQUIRE(plan_out.size() == 2);
    CHECK(plan_out[1].intent == "cover the rear");

    const auto calls = rec.calls();
    REQUIRE(calls.size() == 2);
    // The retry carries the whole failed exchange plus the correction.
    REQUIRE(calls[1].messages.size() == 3);
    CHECK(calls[1].messages[0].text == calls[0].messages[0].text);
    CHECK(calls[1].messages[1].role == Role::assistant);
    CHECK(calls[1].messages[2].text.find("unit(s) 2") != std::string::npos);
  }

  SUBCASE("a second failure is a planning error") {
    auto backend = std::make_shared<ScriptedBackend>(std::vector<ScriptRule>{
        strategic_rule("(none)", "unit 1 | advance | cp | 1"),
        {"could not be used", {}, std::nullopt, Tier::strategic, "still just unit 1 thanks"},
    });
    CHECK_THROWS_AS(plan(p, *backend, prompts), PlanningError);
  }
}

TEST_CASE("planning with no units is refused") {
  const GameState s = skirmish_state();
  StrategicPrompt p = red_prompt(s);
  p.unit_ids.clear();
  ScriptedBackend backend;
  CHECK_THROWS_AS(plan(p, backend, PromptLibrary::builtin()), PlanningError);
}

TEST_CASE("expert guidance prepends as one exact block") {
  const GameState s = skirmish_state();
  StrategicPrompt p = red_prompt(s);
  const PromptLibrary prompts = PromptLibrary::builtin();
  const std::string bare = render_plan_prompt(p, prompts);

  p.expert_doc = "Mass before you move.\nNever trade the point for a kill.";
  const std::string guided = render_plan_prompt(p, prompts);

  CHECK(guided == expert_block(p.expert_doc) + bare);
  CHECK(guided.find("Mass before you move.\nNever trade the point for a kill.") !=
        std::string::npos);
  CHECK(bare.rfind("You are the red commander", 0) == 0);
}

TEST_CASE("unit-level review accepts, modifies, or shrugs") {
  const GameState s = skirmish_state();
  const SideView view = build_side_view(s, Side::red);
  const PromptLibrary prompts = PromptLibrary::builtin();
  TaskAssignment order;
  order.unit = 1;
  order.intent = "advance";
  order.target = parse_target("cp");
  order.code = 1;

  SUBCASE("plain acceptance") {
    ScriptedBackend backend({accept_rule()});
    const Suggestion sug = tactical_review(order, view, backend, prompts);
    CHECK(sug.verdict == Suggestion::Verdict::accept);
    CHECK(sug.unit == 1);
  }

  SUBCASE("acceptance tolerates trailing words") {
    ScriptedBackend backend({{"reply with the single word", {}, std::nullopt, std::nullopt,
                              "Accept. The route is clear."}});
    CHECK(tactical_review(order, view, backend, prompts).verdict ==
          Suggestion::Verdict::accept);
  }

  SUBCASE("a full modify carries the proposed line and the reason") {
    ScriptedBackend backend({{"reply with the single word", {}, std::nullopt, std::nullopt,
                              "modify: unit 1 | hold short | - | 9 | reason: the lane is "
                              "covered by fire"}});
    const Suggestion sug = tactical_review(order, view, backend, prompts);
    CHECK(sug.verdict == Suggestion::Verdict::modify);
    CHECK(sug.proposed == "unit 1 | hold short | - | 9");
    CHECK(sug.reason == "the lane is covered by fire");
    REQUIRE(sug.proposed_assignment.has_value());
    CHECK(sug.proposed_assignment->code == 9);
  }

  SUBCASE("a modify without a reason degrades to acceptance") {
    ScriptedBackend backend({{"reply with the single word", {}, std::nullopt, std::nullopt,
                              "modify: unit 1 | hold short | - | 9 | reason: "}});
    CHECK(tactical_review(order, view, backend, prompts).verdict ==
          Suggestion::Verdict::accept);
  }

  SUBCASE("word salad degrades to acceptance") {
    ScriptedBackend backend({{"reply with the single word", {}, std::nullopt, std::nullopt,
                              "perhaps, but then again the fog"}});
    CHECK(tactical_review(order, view, backend, prompts).verdict ==
          Suggestion::Verdict::accept);
  }

  SUBCASE("reviewing a unit the side does not have is an error") {
    TaskAssignment ghost = order;
    ghost.unit = 42;
    ScriptedBackend backend({accept_rule()});
    CHECK_THROWS_AS(tactical_review(ghost, view, backend, prompts), PlanningError);
  }
}

TEST_CASE("negotiation runs to fixpoint or the round cap") {
  const GameState s = skirmish_state();
  const SideView view = build_side_view(s, Side::red);
  const PromptLibrary prompts = PromptLibrary::builtin();
  const StrategicPrompt p = red_prompt(s);
  const std::string plan_lines = "unit 1 | advance | cp | 1\nunit 2 | advance | cp | 1";

  SUBCASE("unanimous acceptance ends after one round") {
    auto backend = std::make_shared<ScriptedBackend>(std::vector<ScriptRule>{
        {"Order every unit", {}, std::nullopt, Tier::strategic, plan_lines},
        accept_rule(),
    });
    const NegotiationResult out = negotiate(view, p, *backend, prompts, 3);
    CHECK(out.transcript.rounds.size() == 1);
    CHECK(out.transcript.terminated_by == NegotiationEnd::fixpoint);
    CHECK(out.plan.size() == 2);
    for (const Suggestion& sug : out.transcript.rounds[0].suggestions)
      CHECK(sug.verdict == Suggestion::Verdict::accept);
  }

  SUBCASE("perpetual objection stops exactly at the cap with the last plan") {
    auto backend = std::make_shared<ScriptedBackend>(std::vector<ScriptRule>{
        {"Order every unit", {}, std::nullopt, Tier::strategic, plan_lines},
        {"reply with the single word", {}, std::nullopt, Tier::tactical,
         "modify: unit 0 | hold until the axis clears | - | 9 | reason: the approach is "
         "still contested"},
    });
    const int max_rounds = 4;
    const NegotiationResult out = negotiate(view, p, *backend, prompts, max_rounds);
    CHECK(out.transcript.rounds.size() == max_rounds);
    CHECK(out.transcript.terminated_by == NegotiationEnd::round_cap);
    // The commander's final word stands as ordered, objections notwithstanding.
    REQUIRE(out.plan.size() == out.transcript.rounds.back().plan.size());
    for (std::size_t i = 0; i < out.plan.size(); ++i)
      CHECK(format_assignment(out.plan[i]) ==
            format_assignment(out.transcript.rounds.back().plan[i]));
    for (const auto& round : out.transcript.rounds)
      for (const Suggestion& sug : round.suggestions)
        CHECK(sug.verdict == Suggestion::Verdict::modify);
  }

  SUBCASE("modify requests reach the next strategic prompt verbatim") {
    auto backend = std::make_shared<ScriptedBackend>(std::vector<ScriptRule>{
        {"Order every unit", {}, std::nullopt, Tier::strategic, plan_lines},
        {"reply with the single word", {}, std::nullopt, Tier::tactical,
         "modify: unit 0 | hold fast | - | 9 | reason: crossfire on the approach"},
    });
    RecordingBackend rec(backend);
    negotiate(view, p, rec, prompts, 2);

    const std::vector<CallRecord> calls = rec.calls();
    std::vector<const CallRecord*> strategic;
    for (const CallRecord& c : calls)
      if (c.tier == Tier::strategic) strategic.push_back(&c);
    REQUIRE(strategic.size() == 2);
    CHECK(strategic[0]->messages.back().text.find("(none)") != std::string::npos);
    const std::string& second = strategic[1]->messages.back().text;
    CHECK(second.find("unit 1 asks to change its order to \"unit 0 | hold fast | - | 9\" "
                      "because crossfire on the approach") != std::string::npos);
    CHECK(second.find("unit 2 asks to change its order to") != std::string::npos);
  }

  SUBCASE("reviewers see only their own unit's sightings") {
    auto backend = std::make_shared<ScriptedBackend>(std::vector<ScriptRule>{
        {"Order every unit", {}, std::nullopt, Tier::strategic, plan_lines},
        accept_rule(),
    });
    RecordingBackend rec(backend);
    negotiate(view, p, rec, prompts, 1);

    bool saw_unit1_review = false, saw_unit2_review = false;
    for (const CallRecord& c : rec.calls()) {
      if (c.tier != Tier::tactical) continue;
      const std::string& text = c.messages.back().text;
      if (text.find("red unit 1 at") != std::string::npos) {
        saw_unit1_review = true;
        // Unit 1 stands next to the blue unit and should know it.
        CHECK(text.find("blue agent 11") != std::string::npos);
      }
      if (text.find("red unit 2 at") != std::string::npos) {
        saw_unit2_review = true;
        // Unit 2 is far away: no blue sighting may leak into its review.
        CHECK(text.find("blue") == std::string::npos);
      }
    }
    CHECK(saw_unit1_review);
    CHECK(saw_unit2_review);
  }

  SUBCASE("a backend failure surfaces with the partial transcript attached") {
    // The strategic rule keys on the empty suggestions block, so it matches
    // the first round only; the replan call after the objections is a miss.
    auto backend = std::make_shared<ScriptedBackend>(std::vector<ScriptRule>{
        strategic_rule("Suggestions from your unit leaders:\n(none)", plan_lines),
        {"reply with the single word", {}, std::nullopt, Tier::tactical,
         "modify: unit 0 | hold | - | 9 | reason: contested"},
    });
    try {
      negotiate(view, p, *backend, prompts, 3);
      FAIL("expected a negotiation error");
    } catch (const NegotiationError& e) {
      CHECK(e.transcript.rounds.size() == 1);
      CHECK(e.transcript.rounds[0].plan.size() == 2);
      CHECK(e.transcript.rounds[0].suggestions.size() == 2);
    }
  }

  SUBCASE("a zero round budget is rejected") {
    ScriptedBackend backend;
    CHECK_THROWS_AS(negotiate(view, p, backend, prompts, 0), PlanningError);
  }
}

TEST_CASE("orders ground out into simulator actions") {
  GameState s = skirmish_state();

  SUBCASE("move codes without a target take the literal direction") {
    TaskAssignment a;
    a.unit = 2;
    a.intent = "probe";
    a.code = 1;  // east
    CHECK(assignment_to_action(a, s) == Action::move(Direction::east));
    a.code = 3;  // northwest
    CHECK(assignment_to_action(a, s) == Action::move(Direction::northwest));
  }

  SUBCASE("move codes with a target steer greedily instead") {
    TaskAssignment a;
    a.unit = 2;
    a.intent = "close in";
    a.target = parse_target("cp");
    a.code = 4;  // literal west would walk away; the target overrides
    const Action act = assignment_to_action(a, s);
    REQUIRE(act.type == ActionType::move);
    const Unit* u = s.find_unit(2);
    CHECK(hex_distance(hex_step(u->pos, act.dir), s.map.control_point) <
          hex_distance(u->pos, s.map.control_point));
  }

  SUBCASE("the canonical shoot-by-move-code fixture steers toward the enemy") {
    TaskAssignment a = *parse_assignment_line("unit 1 | shoot | blue 2 | 5");
    a.target.unit_id = 11;  // our blue unit
    const Action act = assignment_to_action(a, s);
    REQUIRE(act.type == ActionType::move);
    const Unit* u = s.find_unit(1);
    const Unit* t = s.find_unit(11);
    CHECK(hex_distance(hex_step(u->pos, act.dir), t->pos) < hex_distance(u->pos, t->pos));
  }

  SUBCASE("fast moves run toward the point and slow down on the doorstep") {
    TaskAssignment a;
    a.unit = 2;
    a.intent = "rush";
    a.code = 7;  // no target: the control point is implied
    const Action far = assignment_to_action(a, s);
    CHECK(far.type == ActionType::accel_move);

    s.units.erase(s.units.begin());  // drop unit 1, freeing (6,5)
    s.find_unit(2)->pos = {6, 5};    // one step off the point
    const Action close = assignment_to_action(a, s);
    CHECK(close.type == ActionType::move);  // lands exactly on the point
    CHECK(hex_step(HexCoord{6, 5}, close.dir) == s.map.control_point);
  }

  SUBCASE("a fast move with nowhere to go degrades to hold") {
    GameState t = skirmish_state();
    // Box unit 1 in completely.
    int next_id = 20;
    for (Direction d : kAllDirections) {
      Unit blocker;
      blocker.id = next_id++;
      blocker.side = Side::red;
      blocker.pos = hex_step(t.find_unit(1)->pos, d);
      t.units.push_back(blocker);
    }
    TaskAssignment a;
    a.unit = 1;
    a.intent = "rush";
    a.code = 7;
    CHECK(assignment_to_action(a, t) == Action::hold());
  }

  SUBCASE("standing on the target already degrades to hold") {
    TaskAssignment a;
    a.unit = 1;
    a.intent = "rush";
    a.code = 7;
    GameState t = skirmish_state();
    t.find_unit(1)->pos = t.map.control_point;
    CHECK(assignment_to_action(a, t) == Action::hold());
  }

  SUBCASE("shoot orders need a reachable unit target") {
    TaskAssignment a;
    a.unit = 1;
    a.intent = "engage";
    a.target = parse_target("11");
    a.code = 8;
    CHECK(assignment_to_action(a, s) == Action::shoot(11));

    a.target = parse_target("cp");  // not a unit
    CHECK(assignment_to_action(a, s) == Action::hold());

    a.target = parse_target("11");
    s.find_unit(11)->pos = {0, 0};  // out of range now
    CHECK(assignment_to_action(a, s) == Action::hold());
  }

  SUBCASE("stances map directly") {
    TaskAssignment a;
    a.unit = 1;
    a.intent = "dig in";
    a.code = 9;
    CHECK(assignment_to_action(a, s) == Action::defend());
    a.code = 10;
    CHECK(assignment_to_action(a, s) == Action::evade());
  }

  SUBCASE("unknown codes and unknown units are refused") {
    TaskAssignment a;
    a.unit = 1;
    a.intent = "???";
    a.code = 99;
    CHECK_THROWS_AS(assignment_to_action(a, s), PlanningError);
    a.code = 0;
    CHECK_THROWS_AS(assignment_to_action(a, s), PlanningError);
    a.code = 1;
    a.unit = 77;
    CHECK_THROWS_AS(assignment_to_action(a, s), PlanningError);
  }
}

TEST_CASE("intent glyphs for the map overlay") {
  CHECK(symbol_for_intent("capture the control point") == "!");
  CHECK(symbol_for_intent("seize hex 0606") == "!");
  CHECK(symbol_for_intent("aim at blue 2") == "→");
  CHECK(symbol_for_intent("engage the screen") == "→");
  CHECK(symbol_for_intent("move along the road") == "·");
  CHECK(symbol_for_intent("") == "·");
}

}  // TEST_SUITE
