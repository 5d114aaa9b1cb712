#include "genwar/view.h"

#include <algorithm>
#include <set>

namespace genwar {

const Unit* SideView::friendly(int id) const {
  for (const Unit& u : friendlies)
    if (u.id == id) return &u;
  return nullptr;
}

std::vector<const ObservationRecord*> SideView::observations_of(int observer) const {
  std::vector<const ObservationRecord*> out;
  for (const ObservationRecord& o : observations)
    if (o.observer == observer) out.push_back(&o);
  return out;
}

std::vector<const ObservationRecord*> SideView::enemy_sightings() const {
  std::vector<const ObservationRecord*> out;
  std::set<int> seen;
  for (const ObservationRecord& o : observations)
    if (o.observed_side != side && seen.insert(o.observed).second) out.push_back(&o);
  return out;
}

SideView build_side_view(const GameState& state, Side side) {
  SideView view;
  view.side = side;
  view.tick = state.tick;
  view.map = state.map;

  std::vector<int> observer_ids;
  for (const Unit& u : state.units)
    if (u.side == side && u.alive) observer_ids.push_back(u.id);
  std::sort(observer_ids.begin(), observer_ids.end());

  for (int id : observer_ids) view.friendlies.push_back(*state.find_unit(id));

  for (int id : observer_ids)
    for (ObservationRecord& o : visible_units(state, *state.find_unit(id)))
      view.observations.push_back(std::move(o));
  return view;
}

std::vector<Action> view_legal_actions(const SideView& view, int unit_id) {
  std::vector<Action> out;
  const Unit* unit = view.friendly(unit_id);
  if (unit == nullptr || !unit->alive) return out;

  // Cells known to be occupied: every friendly plus every sighting.
  std::set<HexCoord> occupied;
  for (const Unit& u : view.friendlies) occupied.insert(u.pos);
  for (const ObservationRecord& o : view.observations) occupied.insert(o.observed_pos);

  const auto cell_free = [&](const HexCoord& c) {
    return view.map.in_bounds(c) && occupied.count(c) == 0;
  };

  for (Direction d : kAllDirections)
    if (cell_free(hex_step(unit->pos, d))) out.push_back(Action::move(d));
  for (Direction d : kAllDirections)
    if (cell_free(hex_step(unit->pos, d))) out.push_back(Action::accel_move(d));

  // Shots rest on the unit's own sightings only, mirroring ground truth.
  std::set<int> targets;
  for (const ObservationRecord& o : view.observations)
    if (o.observer == unit_id && o.observed_side != view.side &&
        hex_distance(unit->pos, o.observed_pos) <= unit->weapon_range)
      targets.insert(o.observed);
  for (int t : targets) out.push_back(Action::shoot(t));

  out.push_back(Action::defend());
  out.push_back(Action::evade());
  out.push_back(Action::hold());
  return out;
}

}  // namespace genwar
