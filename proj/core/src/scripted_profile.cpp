#include "genwar/scripted_profile.h"

namespace genwar {

namespace {

std::string plan_reply_for(const Scenario& scenario, Side side) {
  std::string reply;
  for (const Unit& u : scenario.units)
    if (u.side == side)
      reply += "unit " + std::to_string(u.id) + " | rush the control point | cp | 7\n";
  return reply;
}

std::vector<ScriptRule> base_rules(const Scenario& scenario) {
  std::vector<ScriptRule> rules;

  // Importance scoring, keyed on the event wording. Specific events first,
  // then the routine default.
  rules.push_back({"Importance score:", {"seizing the control point"}, {}, {}, "8"});
  rules.push_back({"Importance score:", {"moving on the road"}, {}, {}, "1"});
  rules.push_back({"Importance score:", {"approaching the control point"}, {}, {}, "7"});
  rules.push_back({"Importance score:", {}, {}, {}, "3"});

  rules.push_back({"Relevance score:", {}, {}, {}, "5"});

  rules.push_back({"most salient high-level questions", {}, {}, {},
                   "What is the enemy committing to?\n"
                   "Where should we concentrate to take the control point?"});
  rules.push_back({"What high-level insight", {}, {}, {},
                   "We should mass on the control point axis before the enemy does "
                   "(because of 1, 2)."});

  rules.push_back({"Write a concise summary", {}, {}, Tier::strategic,
                   "Our agents are advancing on the control point and keeping contact with "
                   "every sighted enemy agent."});

  rules.push_back({"Order every unit", {"the red commander"}, {}, Tier::strategic,
                   plan_reply_for(scenario, Side::red)});
  rules.push_back({"Order every unit", {"the blue commander"}, {}, Tier::strategic,
                   plan_reply_for(scenario, Side::blue)});
  return rules;
}

}  // namespace

std::shared_ptr<ScriptedBackend> make_scripted_profile(const Scenario& scenario) {
  std::vector<ScriptRule> rules = base_rules(scenario);
  rules.push_back({"reply with the single word: accept", {}, {}, Tier::tactical, "accept"});
  return std::make_shared<ScriptedBackend>(std::move(rules));
}

std::shared_ptr<ScriptedBackend> make_always_object_profile(const Scenario& scenario) {
  std::vector<ScriptRule> rules = base_rules(scenario);
  rules.push_back({"reply with the single word: accept", {}, {}, Tier::tactical,
                   "modify: unit 0 | hold until the axis clears | - | 9 | reason: the "
                   "approach is still contested"});
  return std::make_shared<ScriptedBackend>(std::move(rules));
}

}  // namespace genwar
