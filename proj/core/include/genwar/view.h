#pragma once

#include <vector>

#include "genwar/sim.h"

namespace genwar {

// Everything one side is allowed to know at a given tick: terrain (common
// knowledge), its own units in full, and this tick's observations gathered by
// those units. Policies and planners receive only this, never GameState.
struct SideView {
  Side side = Side::red;
  int tick = 0;
  MapSpec map;
  std::vector<Unit> friendlies;                  // living own units, id order
  std::vector<ObservationRecord> observations;   // grouped by observer, id order

  const Unit* friendly(int id) const;

  // Observations gathered by one unit, in the order they were made.
  std::vector<const ObservationRecord*> observations_of(int observer) const;

  // Distinct enemy sightings (deduplicated by unit id, first sighting kept).
  std::vector<const ObservationRecord*> enemy_sightings() const;
};

// Builds the restricted view: one observation per (observer, unit-in-range)
// pair, observers visited in id order.
SideView build_side_view(const GameState& state, Side side);

// Actions a unit can justify from the view alone: moves into cells free of
// every known unit, shots at enemies the unit itself sees within weapon
// range, plus defend/evade/hold. Ground truth may still veto a move into an
// unseen enemy (sim-core sanitizes); the list is ordered the same way as
// sim-core's legal_actions.
std::vector<Action> view_legal_actions(const SideView& view, int unit_id);

}  // namespace genwar
