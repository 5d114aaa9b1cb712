#include "genwar/baselines.h"

#include <algorithm>
#include <set>

namespace genwar {

ActionMap RulePolicy::decide(const SideView& view) {
  ActionMap actions;
  std::set<HexCoord> occupied;
  for (const Unit& u : view.friendlies) occupied.insert(u.pos);
  for (const ObservationRecord& o : view.observations) occupied.insert(o.observed_pos);

  for (const Unit& unit : view.friendlies) {
    // Nearest enemy this unit sees inside weapon range; ties go to the lower
    // unit id.
    int target = -1;
    int best = unit.weapon_range + 1;
    for (const ObservationRecord* o : view.observations_of(unit.id)) {
      if (o->observed_side == view.side) continue;
      const int d = hex_distance(unit.pos, o->observed_pos);
      if (d <= unit.weapon_range && (d < best || (d == best && o->observed < target))) {
        best = d;
        target = o->observed;
      }
    }
    if (target >= 0) {
      actions.emplace(unit.id, Action::shoot(target));
      continue;
    }

    // Greedy step: the free neighbouring cell that strictly shortens the
    // distance to the control point, scanning directions in fixed order.
    const int here = hex_distance(unit.pos, view.map.control_point);
    Action chosen = Action::hold();
    int best_dist = here;
    for (Direction d : kAllDirections) {
      const HexCoord next = hex_step(unit.pos, d);
      if (!view.map.in_bounds(next) || occupied.count(next) > 0) continue;
      const int dist = hex_distance(next, view.map.control_point);
      if (dist < best_dist) {
        best_dist = dist;
        chosen = Action::move(d);
      }
    }
    actions.emplace(unit.id, chosen);
  }
  return actions;
}

ActionMap RandomPolicy::decide(const SideView& view) {
  ActionMap actions;
  for (const Unit& unit : view.friendlies) {
    const std::vector<Action> legal = view_legal_actions(view, unit.id);
    if (legal.empty()) continue;
    actions.emplace(unit.id, legal[rng_.bounded(legal.size())]);
  }
  return actions;
}

}  // namespace genwar
